//! The paired trial sweep. Each (base_seed, trial) pair pins one scene and
//! one measurement tensor; every requested algorithm consumes that identical
//! tensor, so accuracy gaps between algorithms are paired differences rather
//! than sampling noise.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use fcomp_core::radar::{self, range_sub_atom, velocity_sub_atom, Scene, SceneBounds};
use fcomp_core::{
    comp, fcomp, fomp, omp, Algorithm, ComplexTensor, DenseDictionary, InterpolatedDictionary,
    SeparableGrid, SparseSolution,
};

use crate::config::ExperimentSpec;
use crate::error::{CliError, Result};

/// Stride between reseed attempts for a trial whose scene draw came up
/// infeasible (golden-ratio step, keeps retries off neighbour trials' seeds).
const RESEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;
const MAX_RESEEDS: u64 = 32;

/// One algorithm's result on one trial. The CSV schema is the struct's
/// field order; per-target distances stay in memory only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub algo: Algorithm,
    pub n_star: usize,
    pub trial: usize,
    /// Seed that actually produced the scene (differs from base_seed ⊕ trial
    /// only when infeasible draws forced a reseed).
    pub seed: u64,
    pub time_total_ns: u64,
    pub time_select_ns: u64,
    pub time_refit_ns: u64,
    pub time_correct_ns: u64,
    pub misses: usize,
    pub k: usize,
    /// Normalized distance from each true target to its matched estimate.
    #[serde(skip)]
    pub distances: Vec<f64>,
}

/// FNV-1a over the raw bit pattern of every sample. Used to assert the
/// paired-design invariant: all algorithms in a trial see the same tensor.
pub fn measurement_checksum(y: &ComplexTensor) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for z in y.as_slice() {
        for bits in [z.re.to_bits(), z.im.to_bits()] {
            for byte in bits.to_le_bytes() {
                h = (h ^ u64::from(byte)).wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
    }
    h
}

/// Dictionaries for one grid density. The dense form is materialized only
/// when an on-grid-correlation algorithm (omp, comp) asks for it.
struct GridInstance {
    n_star: usize,
    dict: InterpolatedDictionary,
    dense: Option<DenseDictionary>,
}

fn build_instance(spec: &ExperimentSpec, n_star: usize) -> Result<GridInstance> {
    let domain = spec.radar.estimation_domain();
    let grid = SeparableGrid::cell_centered(&domain, &[n_star, n_star])?;
    let g1 = range_sub_atom(&spec.radar);
    let g2 = velocity_sub_atom(&spec.radar);
    let dict = InterpolatedDictionary::build(&[&g1, &g2], &grid)?;
    let dense = spec
        .algorithms
        .iter()
        .any(|a| !a.is_factorized())
        .then(|| DenseDictionary::materialize(&dict));
    Ok(GridInstance {
        n_star,
        dict,
        dense,
    })
}

fn solve_one(
    algo: Algorithm,
    y: &ComplexTensor,
    inst: &GridInstance,
    k: usize,
) -> Result<SparseSolution> {
    let dense = || {
        inst.dense
            .as_ref()
            .expect("dense dictionary materialized for non-factorized algorithms")
    };
    let sol = match algo {
        Algorithm::Fcomp => fcomp(y, &inst.dict, k)?,
        Algorithm::Fomp => fomp(y, &inst.dict, k)?,
        Algorithm::Comp => comp(y, dense(), k)?,
        Algorithm::Omp => omp(y, dense(), k)?,
    };
    Ok(sol)
}

struct PreparedTrial {
    trial: usize,
    seed: u64,
    scene: Scene,
    measurement: ComplexTensor,
    checksum: u64,
}

/// Scene and measurement for one trial. Seeding depends only on
/// (base_seed, trial), never on the grid density or algorithm set, so the
/// scene stream is shared across the whole sweep.
fn prepare_trial(
    spec: &ExperimentSpec,
    bounds: &SceneBounds,
    trial: usize,
) -> Result<PreparedTrial> {
    let base = spec.base_seed ^ trial as u64;
    for attempt in 0..MAX_RESEEDS {
        let seed = base.wrapping_add(attempt.wrapping_mul(RESEED_STRIDE));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match radar::generate_random_scene(
            spec.targets_per_trial,
            &spec.radar,
            bounds,
            spec.min_separation_cells,
            &mut rng,
        ) {
            Ok(mut scene) => {
                scene.noise_sigma = spec.noise_sigma;
                let measurement = radar::synthesize_measurement(&scene, &spec.radar, &mut rng)?;
                let checksum = measurement_checksum(&measurement);
                return Ok(PreparedTrial {
                    trial,
                    seed,
                    scene,
                    measurement,
                    checksum,
                });
            }
            Err(fcomp_core::Error::InfeasibleScene { attempts }) => {
                eprintln!(
                    "trial {trial}: scene draw infeasible after {attempts} attempts, reseeding"
                );
            }
            Err(e) => return Err(e.into()),
        }
    }
    Err(CliError::failure(format!(
        "trial {trial}: no feasible scene after {MAX_RESEEDS} reseeds; \
         lower targets_per_trial or min_separation_cells"
    )))
}

/// Estimates in physical (r, v) coordinates. Axis 0 of the dictionary is
/// the coupled range r' = r + (f0·Tc/B)·v, so range must be decoupled with
/// the estimated velocity before scoring.
fn physical_estimates(sol: &SparseSolution, spec: &ExperimentSpec) -> Vec<(f64, f64)> {
    sol.components
        .iter()
        .map(|c| {
            let v = c.parameters[1];
            (radar::decouple_range(c.parameters[0], v, &spec.radar), v)
        })
        .collect()
}

fn record_trial(
    algo: Algorithm,
    n_star: usize,
    t: &PreparedTrial,
    sol: &SparseSolution,
    wall_ns: u64,
    spec: &ExperimentSpec,
    capture_timing: bool,
) -> TrialRecord {
    let estimates = physical_estimates(sol, spec);
    let report = radar::evaluate_misses(&estimates, &t.scene, &spec.radar);
    let (time_total_ns, time_select_ns, time_refit_ns, time_correct_ns) = if capture_timing {
        (
            wall_ns,
            sol.timings.select_ns,
            sol.timings.refit_ns,
            sol.timings.correct_ns,
        )
    } else {
        (0, 0, 0, 0)
    };
    TrialRecord {
        algo,
        n_star,
        trial: t.trial,
        seed: t.seed,
        time_total_ns,
        time_select_ns,
        time_refit_ns,
        time_correct_ns,
        misses: report.misses,
        k: spec.targets_per_trial,
        distances: report.distances,
    }
}

fn run_grid_timed(
    spec: &ExperimentSpec,
    inst: &GridInstance,
    bounds: &SceneBounds,
) -> Result<(Vec<TrialRecord>, u64)> {
    let k = spec.targets_per_trial;
    let mut records = Vec::with_capacity(spec.trials * spec.algorithms.len());

    // One warm-up solve per algorithm, excluded from the records, so the
    // first timed trial does not pay first-touch costs.
    let warm = prepare_trial(spec, bounds, 0)?;
    for &algo in &spec.algorithms {
        solve_one(algo, &warm.measurement, inst, k)?;
    }

    let mut combined = 0u64;
    for trial in 0..spec.trials {
        let t = prepare_trial(spec, bounds, trial)?;
        combined ^= t.checksum;
        for &algo in &spec.algorithms {
            debug_assert_eq!(measurement_checksum(&t.measurement), t.checksum);
            let started = Instant::now();
            let sol = solve_one(algo, &t.measurement, inst, k)?;
            let wall_ns = started.elapsed().as_nanos() as u64;
            records.push(record_trial(
                algo,
                inst.n_star,
                &t,
                &sol,
                wall_ns,
                spec,
                true,
            ));
        }
    }
    Ok((records, combined))
}

fn run_grid_parallel(
    spec: &ExperimentSpec,
    inst: &GridInstance,
    bounds: &SceneBounds,
) -> Result<(Vec<TrialRecord>, u64)> {
    let k = spec.targets_per_trial;
    let per_trial: Vec<(Vec<TrialRecord>, u64)> = (0..spec.trials)
        .into_par_iter()
        .map(|trial| {
            let t = prepare_trial(spec, bounds, trial)?;
            let mut rows = Vec::with_capacity(spec.algorithms.len());
            for &algo in &spec.algorithms {
                debug_assert_eq!(measurement_checksum(&t.measurement), t.checksum);
                let sol = solve_one(algo, &t.measurement, inst, k)?;
                rows.push(record_trial(algo, inst.n_star, &t, &sol, 0, spec, false));
            }
            Ok((rows, t.checksum))
        })
        .collect::<Result<_>>()?;

    let mut records = Vec::with_capacity(spec.trials * spec.algorithms.len());
    let mut combined = 0u64;
    for (rows, checksum) in per_trial {
        records.extend(rows);
        combined ^= checksum;
    }
    Ok((records, combined))
}

/// Runs the full sweep. Record order is deterministic: grid sizes in spec
/// order, trials ascending, algorithms in spec order. Timing columns are
/// the only fields that vary between reruns, and only in sequential mode.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<TrialRecord>> {
    spec.validate()?;
    let bounds = SceneBounds::default_for(&spec.radar);
    let mut records = Vec::new();
    for &n_star in &spec.grid_sizes {
        let inst = build_instance(spec, n_star)?;
        let (rows, combined) = if spec.parallel {
            run_grid_parallel(spec, &inst, &bounds)?
        } else {
            run_grid_timed(spec, &inst, &bounds)?
        };
        eprintln!(
            "n_star={n_star}: {} trials x {} algorithms, paired measurement checksum {combined:#018x}",
            spec.trials,
            spec.algorithms.len()
        );
        records.extend(rows);
    }
    Ok(records)
}
