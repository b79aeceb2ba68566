//! Shared fixtures for the solver benchmarks: one reproducible radar scene
//! and the dictionaries each algorithm family consumes. Dictionary
//! construction is deliberately kept out of the timed sections; the
//! benchmarks measure solves against prebuilt structures, matching how the
//! experiment runner reuses one dictionary across trials.

use fcomp_core::radar::{
    self, generate_random_scene, range_sub_atom, velocity_sub_atom, RadarConfig,
};
use fcomp_core::{ComplexTensor, DenseDictionary, InterpolatedDictionary, SeparableGrid};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const TARGETS: usize = 5;

pub struct Fixture {
    pub n_star: usize,
    pub interpolated: InterpolatedDictionary,
    pub dense: DenseDictionary,
    pub measurement: ComplexTensor,
}

/// Build the default 24 GHz profile at grid density `n_star` with one
/// seeded 5-target scene (the experiment defaults: unit amplitudes, two
/// cells of pairwise separation, no noise).
pub fn fixture(n_star: usize, seed: u64) -> Fixture {
    let cfg = RadarConfig::default_24ghz();
    let grid = SeparableGrid::cell_centered(&cfg.estimation_domain(), &[n_star, n_star])
        .expect("valid grid");
    let g1 = range_sub_atom(&cfg);
    let g2 = velocity_sub_atom(&cfg);
    let interpolated = InterpolatedDictionary::build(&[&g1, &g2], &grid).expect("dictionary");
    let dense = DenseDictionary::materialize(&interpolated);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = radar::SceneBounds::default_for(&cfg);
    let scene =
        generate_random_scene(TARGETS, &cfg, &bounds, 2.0, &mut rng).expect("feasible scene");
    let measurement = radar::synthesize_measurement(&scene, &cfg, &mut rng).expect("synthesis");

    Fixture {
        n_star,
        interpolated,
        dense,
        measurement,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_is_reproducible_and_well_formed() {
        let a = fixture(16, 9);
        let b = fixture(16, 9);
        assert_eq!(a.measurement.as_slice(), b.measurement.as_slice());
        assert_eq!(a.interpolated.grid().node_count(), 256);
        assert_eq!(a.dense.role_count(), a.interpolated.role_count());
    }

    #[test]
    fn all_four_solvers_run_on_the_fixture() {
        let f = fixture(16, 9);
        for k in [1, TARGETS] {
            fcomp_core::fcomp(&f.measurement, &f.interpolated, k).unwrap();
            fcomp_core::fomp(&f.measurement, &f.interpolated, k).unwrap();
            fcomp_core::comp(&f.measurement, &f.dense, k).unwrap();
            fcomp_core::omp(&f.measurement, &f.dense, k).unwrap();
        }
    }
}
