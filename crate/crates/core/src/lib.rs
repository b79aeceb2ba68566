//! Greedy sparse decomposition over continuous separable dictionaries,
//! instantiated for FMCW radar range/velocity estimation.
//!
//! The measurement model is a sparse mix of parametric atoms, each the
//! outer product of per-axis sub-atoms. An [`InterpolatedDictionary`]
//! anchors a first-order Taylor expansion of the continuous atoms to a
//! uniform grid, which lets the greedy solvers in [`solver`] estimate
//! parameters off the grid while computing every correlation one axis at
//! a time. The [`radar`] module instantiates the model for chirp radar:
//! fast-time phase encodes (coupled) range, slow-time phase encodes
//! velocity.
//!
//! ```
//! use fcomp_core::{
//!     fcomp, grid::SeparableGrid, radar, InterpolatedDictionary,
//! };
//!
//! let cfg = radar::RadarConfig::default_24ghz();
//! let grid = SeparableGrid::cell_centered(&cfg.estimation_domain(), &[16, 16]).unwrap();
//! let (g1, g2) = (radar::range_sub_atom(&cfg), radar::velocity_sub_atom(&cfg));
//! let dict = InterpolatedDictionary::build(&[&g1, &g2], &grid).unwrap();
//!
//! let scene = radar::Scene {
//!     targets: vec![radar::Target { r: 4.1, v: -11.9, amp: 1.0f64.into() }],
//!     noise_sigma: 0.0,
//! };
//! let mut rng = rand::thread_rng();
//! let y = radar::synthesize_measurement(&scene, &cfg, &mut rng).unwrap();
//!
//! let solution = fcomp(&y, &dict, 1).unwrap();
//! let p = &solution.components[0].parameters;
//! let r_hat = radar::decouple_range(p[0], p[1], &cfg);
//! assert!((r_hat - 4.1).abs() < 0.2 && (p[1] + 11.9).abs() < 0.6);
//! ```

pub mod dictionary;
pub mod error;
pub mod grid;
pub mod linalg;
pub mod radar;
pub mod solver;
pub mod tensor;

pub use dictionary::{
    coefficient_function, exact_atom, interpolate_atom, AxisTables, DenseDictionary,
    DictionaryOptions, InterpolatedDictionary, SubAtomGenerator,
};
pub use error::{Error, Result};
pub use grid::{GridAxis, Interval, ParameterDomain, SeparableGrid};
pub use solver::{
    comp, correct_parameters, factorized_correlations, fcomp, fomp, joint_refit, omp, select_atom,
    update_residual, Algorithm, AtomSource, ParameterCorrection, RefitResult, SelectionScoreField,
    SolveComponent, SparseSolution, StageTimings,
};
pub use tensor::{CMatrix, ComplexTensor};

/// Re-exported so downstream crates can build tensors without pinning a
/// matching `num-complex` version themselves.
pub use num_complex::Complex64;
