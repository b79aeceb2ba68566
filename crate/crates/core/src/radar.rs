//! FMCW chirp radar instantiation of the separable dictionary model.
//!
//! A scene of point targets produces the measurement tensor
//!
//! ```text
//! 𝒴 = Σ_k α_k · ψ_1(r'_k) ⊗ ψ_2(v_k) + noise,   𝒴 ∈ ℂ^{Ms×Mc}
//! ```
//!
//! where fast-time samples encode the coupled range `r' = r + (f0·Tc/B)·v`
//! through a linear phase ramp and slow-time (chirp-to-chirp) samples
//! encode radial velocity the same way. Both sub-atom families are
//! unit-modulus exponentials, so the model is exactly separable in
//! `(r', v)`; estimators work in that plane and report true range by
//! removing the coupling afterwards.
//!
//! Accuracy is scored in resolution cells: an estimate is a hit when its
//! normalized range/velocity distance to its matched truth is below one.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::dictionary::SubAtomGenerator;
use crate::error::{invalid, Error, Result};
use crate::grid::{Interval, ParameterDomain};
use crate::tensor::ComplexTensor;

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

const MAX_SCENE_DRAWS: usize = 10_000;

/// Chirp waveform and sampling parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RadarConfig {
    /// Sweep bandwidth B in Hz.
    pub bandwidth_hz: f64,
    /// Carrier frequency f0 in Hz.
    pub carrier_hz: f64,
    /// Fast-time sample period Ts in seconds.
    pub sample_period_s: f64,
    /// Samples per chirp, Ms.
    pub samples_per_chirp: usize,
    /// Chirps per measurement, Mc.
    pub chirp_count: usize,
    /// Propagation speed in m/s.
    #[cfg_attr(feature = "serde", serde(default = "default_propagation_speed"))]
    pub propagation_speed: f64,
}

#[cfg(feature = "serde")]
fn default_propagation_speed() -> f64 {
    SPEED_OF_LIGHT
}

impl RadarConfig {
    /// 24 GHz automotive-style profile: B = 200 MHz, f0 = 24 GHz,
    /// Ts = 5 µs, Ms = Mc = 16.
    pub fn default_24ghz() -> Self {
        Self {
            bandwidth_hz: 2e8,
            carrier_hz: 24e9,
            sample_period_s: 5e-6,
            samples_per_chirp: 16,
            chirp_count: 16,
            propagation_speed: SPEED_OF_LIGHT,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("bandwidth_hz", self.bandwidth_hz),
            ("carrier_hz", self.carrier_hz),
            ("sample_period_s", self.sample_period_s),
            ("propagation_speed", self.propagation_speed),
        ];
        for (name, value) in positive {
            if !value.is_finite() || value <= 0.0 {
                return invalid(format!("{name} must be positive and finite"));
            }
        }
        if self.samples_per_chirp == 0 || self.chirp_count == 0 {
            return invalid("samples_per_chirp and chirp_count must be positive");
        }
        Ok(())
    }

    /// Chirp duration Tc = Ms·Ts.
    pub fn chirp_duration(&self) -> f64 {
        self.samples_per_chirp as f64 * self.sample_period_s
    }

    /// Apparent extra range per unit radial speed, f0·Tc/B.
    pub fn range_velocity_coupling(&self) -> f64 {
        self.carrier_hz * self.chirp_duration() / self.bandwidth_hz
    }

    /// Range resolution cell, c/(2B).
    pub fn range_cell(&self) -> f64 {
        self.propagation_speed / (2.0 * self.bandwidth_hz)
    }

    /// Velocity resolution cell, c/(4·f0·Mc·Tc).
    pub fn velocity_cell(&self) -> f64 {
        self.propagation_speed
            / (4.0 * self.carrier_hz * self.chirp_count as f64 * self.chirp_duration())
    }

    /// Unambiguous range extent, Ms·c/(2B): the fast-time phase ramp wraps
    /// beyond it.
    pub fn unambiguous_range(&self) -> f64 {
        self.samples_per_chirp as f64 * self.range_cell()
    }

    /// Half-width of the zero-centered unambiguous velocity interval,
    /// c/(4·f0·Tc).
    pub fn unambiguous_velocity(&self) -> f64 {
        self.propagation_speed / (4.0 * self.carrier_hz * self.chirp_duration())
    }

    /// Measurement tensor shape, `(Ms, Mc)`.
    pub fn measurement_shape(&self) -> [usize; 2] {
        [self.samples_per_chirp, self.chirp_count]
    }

    /// The `(r', v)` box estimators search: coupled range over one
    /// unambiguous extent, velocity centered on zero.
    pub fn estimation_domain(&self) -> ParameterDomain {
        let v = self.unambiguous_velocity();
        ParameterDomain::new(vec![
            Interval::new(0.0, self.unambiguous_range()).expect("positive extent"),
            Interval::new(-v, v).expect("positive extent"),
        ])
        .expect("two axes")
    }
}

/// Unit-modulus exponential sub-atom family: entry `m` (1-based) is
/// `exp(−j·rate·p·m)`, so the parameter appears only as a phase slope.
#[derive(Debug, Clone, Copy)]
pub struct ExponentialSubAtom {
    len: usize,
    rate: f64,
}

impl ExponentialSubAtom {
    pub fn new(len: usize, rate: f64) -> Self {
        Self { len, rate }
    }

    /// Phase slope in radians per parameter unit per sample index.
    pub fn rate(&self) -> f64 {
        self.rate
    }
}

impl SubAtomGenerator for ExponentialSubAtom {
    fn len(&self) -> usize {
        self.len
    }

    fn eval(&self, p: f64) -> Vec<Complex64> {
        (1..=self.len)
            .map(|m| Complex64::from_polar(1.0, -self.rate * p * m as f64))
            .collect()
    }

    fn eval_derivative(&self, p: f64) -> Vec<Complex64> {
        (1..=self.len)
            .map(|m| {
                Complex64::new(0.0, -self.rate * m as f64)
                    * Complex64::from_polar(1.0, -self.rate * p * m as f64)
            })
            .collect()
    }
}

/// Fast-time family ψ₁: sample `m_s` of a coupled range `r'` is
/// `exp(−j·2π·(B/Ms)·(2r'/c)·m_s)`.
pub fn range_sub_atom(cfg: &RadarConfig) -> ExponentialSubAtom {
    let rate = 4.0 * std::f64::consts::PI * cfg.bandwidth_hz
        / (cfg.samples_per_chirp as f64 * cfg.propagation_speed);
    ExponentialSubAtom::new(cfg.samples_per_chirp, rate)
}

/// Slow-time family ψ₂: chirp `m_c` of a radial speed `v` is
/// `exp(−j·2π·f0·Tc·(2v/c)·m_c)`.
pub fn velocity_sub_atom(cfg: &RadarConfig) -> ExponentialSubAtom {
    let rate =
        4.0 * std::f64::consts::PI * cfg.carrier_hz * cfg.chirp_duration() / cfg.propagation_speed;
    ExponentialSubAtom::new(cfg.chirp_count, rate)
}

/// `r' = r + (f0·Tc/B)·v`: the range the fast-time ramp actually encodes.
pub fn coupled_range(r: f64, v: f64, cfg: &RadarConfig) -> f64 {
    r + cfg.range_velocity_coupling() * v
}

/// Inverse of [`coupled_range`]: recover true range from `(r', v)`.
pub fn decouple_range(r_prime: f64, v: f64, cfg: &RadarConfig) -> f64 {
    r_prime - cfg.range_velocity_coupling() * v
}

/// One point target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Target {
    /// True range in meters.
    pub r: f64,
    /// Radial speed in m/s (positive away from the sensor).
    pub v: f64,
    /// Complex reflectivity.
    pub amp: Complex64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Scene {
    pub targets: Vec<Target>,
    /// Per-element complex noise standard deviation; 0 keeps synthesis
    /// exact.
    pub noise_sigma: f64,
}

/// Sampling box for random scenes, expressed in the `(r', v)` estimation
/// plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SceneBounds {
    pub coupled_range: Interval,
    pub velocity: Interval,
}

impl SceneBounds {
    /// Unambiguous box shrunk by one resolution cell at each edge, keeping
    /// targets away from the wrap-around boundaries.
    pub fn default_for(cfg: &RadarConfig) -> Self {
        let v = cfg.unambiguous_velocity();
        Self {
            coupled_range: Interval::new(
                cfg.range_cell(),
                cfg.unambiguous_range() - cfg.range_cell(),
            )
            .expect("more than two range cells"),
            velocity: Interval::new(-v + cfg.velocity_cell(), v - cfg.velocity_cell())
                .expect("more than two velocity cells"),
        }
    }

    fn validate(&self, cfg: &RadarConfig) -> Result<()> {
        let v = cfg.unambiguous_velocity();
        if self.coupled_range.lo < 0.0 || self.coupled_range.hi > cfg.unambiguous_range() {
            return invalid("scene range bounds exceed the unambiguous interval");
        }
        if self.velocity.lo < -v || self.velocity.hi > v {
            return invalid("scene velocity bounds exceed the unambiguous interval");
        }
        Ok(())
    }
}

/// Synthesize the measurement tensor of a scene, shape `(Ms, Mc)`. Noise
/// is circular complex white with per-element standard deviation
/// `scene.noise_sigma`; the RNG is untouched when it is zero.
pub fn synthesize_measurement<R: Rng + ?Sized>(
    scene: &Scene,
    cfg: &RadarConfig,
    rng: &mut R,
) -> Result<ComplexTensor> {
    cfg.validate()?;
    let psi1 = range_sub_atom(cfg);
    let psi2 = velocity_sub_atom(cfg);
    let mut y = ComplexTensor::zeros(&cfg.measurement_shape());
    for t in &scene.targets {
        let atom = ComplexTensor::outer_product(&[
            &psi1.eval(coupled_range(t.r, t.v, cfg)),
            &psi2.eval(t.v),
        ])?;
        y.add_scaled(t.amp, &atom)?;
    }
    if scene.noise_sigma > 0.0 {
        let component = Normal::new(0.0, scene.noise_sigma / 2f64.sqrt())
            .map_err(|e| Error::InvalidArgument(format!("noise model: {e}")))?;
        for z in y.as_mut_slice() {
            *z += Complex64::new(component.sample(rng), component.sample(rng));
        }
    } else if scene.noise_sigma < 0.0 {
        return invalid("noise_sigma must be non-negative");
    }
    Ok(y)
}

/// Distance between two `(r or r', v)` points in resolution-cell units:
/// `sqrt((Δr/range_cell)² + (Δv/velocity_cell)²)`.
pub fn normalized_distance(a: (f64, f64), b: (f64, f64), cfg: &RadarConfig) -> f64 {
    let dr = (a.0 - b.0) / cfg.range_cell();
    let dv = (a.1 - b.1) / cfg.velocity_cell();
    dr.hypot(dv)
}

/// Draw `k` targets with `(r', v)` uniform over `bounds`, every pair at
/// least `min_separation` resolution cells apart in the `(r', v)` plane,
/// and unit-modulus amplitudes with uniform random phase. Fails with an
/// infeasible-scene error once the rejection sampler has spent 10⁴ draws.
pub fn generate_random_scene<R: Rng + ?Sized>(
    k: usize,
    cfg: &RadarConfig,
    bounds: &SceneBounds,
    min_separation: f64,
    rng: &mut R,
) -> Result<Scene> {
    cfg.validate()?;
    bounds.validate(cfg)?;
    if min_separation < 0.0 {
        return invalid("min_separation must be non-negative");
    }

    let mut placed: Vec<(f64, f64)> = Vec::with_capacity(k);
    let mut targets = Vec::with_capacity(k);
    let mut draws = 0usize;
    while targets.len() < k {
        if draws >= MAX_SCENE_DRAWS {
            return Err(Error::InfeasibleScene { attempts: draws });
        }
        draws += 1;
        let r_prime = rng.gen_range(bounds.coupled_range.lo..bounds.coupled_range.hi);
        let v = rng.gen_range(bounds.velocity.lo..bounds.velocity.hi);
        let separated = placed
            .iter()
            .all(|&p| normalized_distance((r_prime, v), p, cfg) >= min_separation);
        if !separated {
            continue;
        }
        placed.push((r_prime, v));
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        targets.push(Target {
            r: decouple_range(r_prime, v, cfg),
            v,
            amp: Complex64::from_polar(1.0, phase),
        });
    }
    Ok(Scene {
        targets,
        noise_sigma: 0.0,
    })
}

/// Outcome of scoring an estimate list against the true scene.
#[derive(Debug, Clone, PartialEq)]
pub struct MissReport {
    pub misses: usize,
    /// Normalized distance per truth target (in truth order); unmatched
    /// truths get infinity.
    pub distances: Vec<f64>,
}

/// Match `(r̂, v̂)` estimates to truth targets by greedy nearest pair on
/// normalized distance. A matched pair is a hit when its distance is
/// strictly below one resolution cell; unmatched truths count as misses.
///
/// Greedy matching (rather than optimal assignment) is a deliberate
/// simplification: for well-separated targets the two agree. Distance ties
/// break on truth order, then estimate value, so the result does not
/// depend on the order of the estimate list.
pub fn evaluate_misses(estimates: &[(f64, f64)], truth: &Scene, cfg: &RadarConfig) -> MissReport {
    let truths: Vec<(f64, f64)> = truth.targets.iter().map(|t| (t.r, t.v)).collect();

    let mut pairs = Vec::with_capacity(truths.len() * estimates.len());
    for (ti, &t) in truths.iter().enumerate() {
        for &e in estimates.iter() {
            pairs.push((normalized_distance(e, t, cfg), ti, e));
        }
    }
    pairs.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1.cmp(&b.1))
            .then(a.2 .0.total_cmp(&b.2 .0))
            .then(a.2 .1.total_cmp(&b.2 .1))
    });

    let mut distances = vec![f64::INFINITY; truths.len()];
    let mut truth_used = vec![false; truths.len()];
    let mut remaining: Vec<(f64, f64)> = estimates.to_vec();
    for (d, ti, e) in pairs {
        if truth_used[ti] {
            continue;
        }
        let Some(pos) = remaining.iter().position(|&x| x == e) else {
            continue;
        };
        truth_used[ti] = true;
        remaining.swap_remove(pos);
        distances[ti] = d;
    }

    // A hit needs distance strictly below one cell; unmatched truths carry
    // infinity and therefore miss.
    let hits = distances.iter().filter(|&&d| d < 1.0).count();
    let misses = distances.len() - hits;
    MissReport { misses, distances }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> RadarConfig {
        RadarConfig::default_24ghz()
    }

    #[test]
    fn resolution_cells_for_default_profile() {
        let c = cfg();
        assert!((c.chirp_duration() - 80e-6).abs() < 1e-18);
        assert!((c.range_cell() - 0.749_481_145).abs() < 1e-6);
        assert!((c.velocity_cell() - 2.439_717).abs() < 1e-5);
        assert!((c.unambiguous_range() - 11.991_698_32).abs() < 1e-5);
        assert!((c.unambiguous_velocity() - 39.035_476).abs() < 1e-4);
    }

    #[test]
    fn sub_atoms_are_all_ones_at_zero() {
        let c = cfg();
        for z in range_sub_atom(&c).eval(0.0) {
            assert_eq!(z, Complex64::new(1.0, 0.0));
        }
        for z in velocity_sub_atom(&c).eval(0.0) {
            assert_eq!(z, Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn sub_atoms_wrap_at_the_unambiguous_extent() {
        let c = cfg();
        let psi1 = range_sub_atom(&c);
        let base = psi1.eval(3.2);
        let wrapped = psi1.eval(3.2 + c.unambiguous_range());
        for (a, b) in base.iter().zip(&wrapped) {
            assert!((a - b).norm() < 1e-12);
        }
        let psi2 = velocity_sub_atom(&c);
        let base = psi2.eval(-5.0);
        let wrapped = psi2.eval(-5.0 + 2.0 * c.unambiguous_velocity());
        for (a, b) in base.iter().zip(&wrapped) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    fn central_difference_error(gen: &ExponentialSubAtom, p: f64, h: f64) -> f64 {
        let plus = gen.eval(p + h);
        let minus = gen.eval(p - h);
        let analytic = gen.eval_derivative(p);
        let mut err = 0.0f64;
        let mut scale = 0.0f64;
        for m in 0..plus.len() {
            let fd = (plus[m] - minus[m]) / Complex64::new(2.0 * h, 0.0);
            err += (fd - analytic[m]).norm_sqr();
            scale += analytic[m].norm_sqr();
        }
        (err / scale).sqrt()
    }

    #[test]
    fn derivatives_match_central_differences() {
        let c = cfg();
        let err = central_difference_error(&range_sub_atom(&c), 3.0, 1e-4);
        assert!(err <= 1e-6, "range derivative error {err}");
        let err = central_difference_error(&velocity_sub_atom(&c), 7.0, 1e-4);
        assert!(err <= 1e-6, "velocity derivative error {err}");
    }

    #[test]
    fn finite_difference_error_is_second_order_in_step() {
        let c = cfg();
        let gen = range_sub_atom(&c);
        let ratio =
            central_difference_error(&gen, 3.0, 2e-3) / central_difference_error(&gen, 3.0, 1e-3);
        assert!((3.0..=5.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn coupling_factor_for_default_profile() {
        let c = cfg();
        // f0·Tc/B = 24e9 · 80e-6 / 2e8 = 9.6e-3 m of apparent range per m/s.
        assert!((c.range_velocity_coupling() - 9.6e-3).abs() < 1e-15);
        assert_eq!(coupled_range(5.0, 0.0, &c), 5.0);
        let r = 3.7;
        let v = -21.4;
        let back = decouple_range(coupled_range(r, v, &c), v, &c);
        assert!((back - r).abs() <= 1e-12 * r.abs().max(1.0));
    }

    #[test]
    fn empty_scene_synthesizes_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let y = synthesize_measurement(&Scene::default(), &cfg(), &mut rng).unwrap();
        assert_eq!(y.shape(), &[16, 16]);
        assert!(y.as_slice().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn zero_parameter_unit_target_synthesizes_to_ones() {
        let scene = Scene {
            targets: vec![Target {
                r: 0.0,
                v: 0.0,
                amp: Complex64::new(1.0, 0.0),
            }],
            noise_sigma: 0.0,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let y = synthesize_measurement(&scene, &cfg(), &mut rng).unwrap();
        for z in y.as_slice() {
            assert_eq!(*z, Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn synthesis_is_linear_in_targets() {
        let c = cfg();
        let t1 = Target {
            r: 2.0,
            v: 4.0,
            amp: Complex64::new(0.5, -1.0),
        };
        let t2 = Target {
            r: 7.5,
            v: -12.0,
            amp: Complex64::new(-0.3, 0.2),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let single = |t: Target, rng: &mut ChaCha8Rng| {
            synthesize_measurement(
                &Scene {
                    targets: vec![t],
                    noise_sigma: 0.0,
                },
                &c,
                rng,
            )
            .unwrap()
        };
        let mut sum = single(t1, &mut rng);
        sum.add_scaled(Complex64::new(1.0, 0.0), &single(t2, &mut rng))
            .unwrap();
        let joint = synthesize_measurement(
            &Scene {
                targets: vec![t1, t2],
                noise_sigma: 0.0,
            },
            &c,
            &mut rng,
        )
        .unwrap();
        for (a, b) in joint.as_slice().iter().zip(sum.as_slice()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn noise_is_deterministic_under_a_fixed_seed() {
        let scene = Scene {
            targets: vec![],
            noise_sigma: 0.3,
        };
        let a = synthesize_measurement(&scene, &cfg(), &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = synthesize_measurement(&scene, &cfg(), &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
        let power: f64 = a.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>() / a.len() as f64;
        assert!(
            (power.sqrt() - 0.3).abs() < 0.1,
            "noise rms {}",
            power.sqrt()
        );
    }

    #[test]
    fn random_scene_respects_count_separation_and_bounds() {
        let c = cfg();
        let bounds = SceneBounds::default_for(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let scene = generate_random_scene(5, &c, &bounds, 2.0, &mut rng).unwrap();
        assert_eq!(scene.targets.len(), 5);
        for t in &scene.targets {
            let rp = coupled_range(t.r, t.v, &c);
            assert!(bounds.coupled_range.contains(rp));
            assert!(bounds.velocity.contains(t.v));
            assert!((t.amp.norm() - 1.0).abs() < 1e-12);
        }
        for i in 0..5 {
            for j in (i + 1)..5 {
                let a = &scene.targets[i];
                let b = &scene.targets[j];
                let d = normalized_distance(
                    (coupled_range(a.r, a.v, &c), a.v),
                    (coupled_range(b.r, b.v, &c), b.v),
                    &c,
                );
                assert!(d >= 2.0, "pair ({i},{j}) separated by {d} cells");
            }
        }
    }

    #[test]
    fn empty_scene_request_yields_no_targets() {
        let c = cfg();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let scene =
            generate_random_scene(0, &c, &SceneBounds::default_for(&c), 2.0, &mut rng).unwrap();
        assert!(scene.targets.is_empty());
    }

    #[test]
    fn scene_generation_is_reproducible() {
        let c = cfg();
        let bounds = SceneBounds::default_for(&c);
        let a =
            generate_random_scene(5, &c, &bounds, 2.0, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b =
            generate_random_scene(5, &c, &bounds, 2.0, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn overcrowded_scene_is_reported_infeasible() {
        let c = cfg();
        let bounds = SceneBounds {
            coupled_range: Interval::new(1.0, 1.2).unwrap(),
            velocity: Interval::new(-0.1, 0.1).unwrap(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let err = generate_random_scene(3, &c, &bounds, 5.0, &mut rng).unwrap_err();
        assert!(matches!(err, Error::InfeasibleScene { attempts: 10_000 }));
    }

    #[test]
    fn perfect_estimates_score_zero_misses() {
        let c = cfg();
        let scene = Scene {
            targets: vec![
                Target {
                    r: 3.0,
                    v: 10.0,
                    amp: Complex64::new(1.0, 0.0),
                },
                Target {
                    r: 8.0,
                    v: -20.0,
                    amp: Complex64::new(1.0, 0.0),
                },
            ],
            noise_sigma: 0.0,
        };
        let report = evaluate_misses(&[(3.0, 10.0), (8.0, -20.0)], &scene, &c);
        assert_eq!(report.misses, 0);
        assert!(report.distances.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn one_cell_error_is_a_miss_boundary_excluded() {
        let c = cfg();
        // Truth at the origin keeps the one-cell offset exact in floating
        // point, so the normalized distance is 1.0 on the nose.
        let scene = Scene {
            targets: vec![Target {
                r: 0.0,
                v: 0.0,
                amp: Complex64::new(1.0, 0.0),
            }],
            noise_sigma: 0.0,
        };
        let report = evaluate_misses(&[(c.range_cell(), 0.0)], &scene, &c);
        assert_eq!(report.misses, 1);
        assert_eq!(report.distances[0], 1.0);

        let report = evaluate_misses(&[(0.99 * c.range_cell(), 0.0)], &scene, &c);
        assert_eq!(report.misses, 0);
    }

    #[test]
    fn unmatched_truths_are_misses_with_infinite_distance() {
        let c = cfg();
        let scene = Scene {
            targets: vec![
                Target {
                    r: 3.0,
                    v: 0.0,
                    amp: Complex64::new(1.0, 0.0),
                },
                Target {
                    r: 9.0,
                    v: 0.0,
                    amp: Complex64::new(1.0, 0.0),
                },
            ],
            noise_sigma: 0.0,
        };
        let report = evaluate_misses(&[(3.0, 0.0)], &scene, &c);
        assert_eq!(report.misses, 1);
        assert_eq!(report.distances[0], 0.0);
        assert!(report.distances[1].is_infinite());
    }

    #[test]
    fn miss_report_is_invariant_to_estimate_order() {
        let c = cfg();
        let bounds = SceneBounds::default_for(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let scene = generate_random_scene(5, &c, &bounds, 2.0, &mut rng).unwrap();
        let mut estimates: Vec<(f64, f64)> = scene
            .targets
            .iter()
            .map(|t| (t.r + 0.2, t.v - 0.5))
            .collect();
        let forward = evaluate_misses(&estimates, &scene, &c);
        estimates.reverse();
        let reversed = evaluate_misses(&estimates, &scene, &c);
        estimates.swap(0, 2);
        let swapped = evaluate_misses(&estimates, &scene, &c);
        assert_eq!(forward, reversed);
        assert_eq!(forward, swapped);
    }
}
