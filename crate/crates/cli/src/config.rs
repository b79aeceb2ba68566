//! Experiment configuration. One JSON document maps 1:1 onto
//! [`ExperimentSpec`]; every field can be overridden by a command-line
//! flag, and flags win.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use fcomp_core::radar::RadarConfig;
use fcomp_core::Algorithm;

use crate::error::{CliError, Result};

/// Full description of one sweep: the radar model, the scene ensemble and
/// the (grid density × algorithm) matrix to run over it.
///
/// Missing JSON fields fall back to the defaults below; unknown fields are
/// rejected so typos fail loudly instead of silently running the default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSpec {
    pub radar: RadarConfig,
    /// Targets per scene; also the sparsity level handed to the solvers.
    pub targets_per_trial: usize,
    /// Swept grid densities, one dictionary per entry (N₁ = N₂ = N*).
    pub grid_sizes: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    pub trials: usize,
    pub base_seed: u64,
    /// Standard deviation of complex white noise added per sample.
    pub noise_sigma: f64,
    /// Minimum pairwise target separation, in resolution cells.
    pub min_separation_cells: f64,
    pub output_dir: PathBuf,
    pub emit_svg: bool,
    /// Fan trials across threads. Disables timing capture: timing columns
    /// are zeroed so the CSV stays deterministic.
    pub parallel: bool,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec {
            radar: RadarConfig::default_24ghz(),
            targets_per_trial: 5,
            grid_sizes: vec![16, 32, 64, 128],
            algorithms: Algorithm::ALL.to_vec(),
            trials: 200,
            base_seed: 7,
            noise_sigma: 0.0,
            min_separation_cells: 2.0,
            output_dir: PathBuf::from("out"),
            emit_svg: false,
            parallel: false,
        }
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        self.radar
            .validate()
            .map_err(|e| CliError::config(format!("radar: {e}")))?;
        if self.trials == 0 {
            return Err(CliError::config("trials must be at least 1"));
        }
        if self.targets_per_trial == 0 {
            return Err(CliError::config("targets_per_trial must be at least 1"));
        }
        if self.grid_sizes.is_empty() {
            return Err(CliError::config("grid_sizes must not be empty"));
        }
        if let Some(n) = self.grid_sizes.iter().find(|&&n| n < 2) {
            return Err(CliError::config(format!(
                "grid size {n} is too small (need at least 2 nodes per axis)"
            )));
        }
        if self.algorithms.is_empty() {
            return Err(CliError::config("algorithms must not be empty"));
        }
        for (i, a) in self.algorithms.iter().enumerate() {
            if self.algorithms[..i].contains(a) {
                return Err(CliError::config(format!("algorithm '{a}' listed twice")));
            }
        }
        if !self.noise_sigma.is_finite() || self.noise_sigma < 0.0 {
            return Err(CliError::config(
                "noise_sigma must be finite and non-negative",
            ));
        }
        if !self.min_separation_cells.is_finite() || self.min_separation_cells < 0.0 {
            return Err(CliError::config(
                "min_separation_cells must be finite and non-negative",
            ));
        }
        Ok(())
    }

    pub fn with_overrides(mut self, o: &Overrides) -> Self {
        if let Some(a) = &o.algorithms {
            self.algorithms = a.clone();
        }
        if let Some(g) = &o.grid_sizes {
            self.grid_sizes = g.clone();
        }
        if let Some(t) = o.trials {
            self.trials = t;
        }
        if let Some(s) = o.base_seed {
            self.base_seed = s;
        }
        if let Some(n) = o.noise_sigma {
            self.noise_sigma = n;
        }
        if let Some(d) = &o.output_dir {
            self.output_dir = d.clone();
        }
        if o.emit_svg {
            self.emit_svg = true;
        }
        if o.parallel {
            self.parallel = true;
        }
        self
    }
}

/// Command-line overrides for individual spec fields. `None` keeps the
/// file's value; the two booleans can only switch features on.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub algorithms: Option<Vec<Algorithm>>,
    pub grid_sizes: Option<Vec<usize>>,
    pub trials: Option<usize>,
    pub base_seed: Option<u64>,
    pub noise_sigma: Option<f64>,
    pub output_dir: Option<PathBuf>,
    pub emit_svg: bool,
    pub parallel: bool,
}

/// A failed read is an I/O error; a file that reads but does not parse is
/// a configuration error.
pub fn load_spec(path: &Path) -> Result<ExperimentSpec> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::failure(format!("reading {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::config(format!("parsing {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        ExperimentSpec::default().validate().unwrap();
    }

    #[test]
    fn json_round_trip_preserves_spec() {
        let spec = ExperimentSpec {
            trials: 17,
            grid_sizes: vec![8, 24],
            algorithms: vec![Algorithm::Fcomp, Algorithm::Omp],
            noise_sigma: 0.25,
            ..ExperimentSpec::default()
        };
        let text = serde_json::to_string_pretty(&spec).unwrap();
        let back: ExperimentSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn missing_fields_take_defaults() {
        let spec: ExperimentSpec = serde_json::from_str(r#"{"trials": 3}"#).unwrap();
        assert_eq!(spec.trials, 3);
        assert_eq!(spec.grid_sizes, vec![16, 32, 64, 128]);
        assert_eq!(spec.algorithms, Algorithm::ALL.to_vec());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = serde_json::from_str::<ExperimentSpec>(r#"{"trails": 3}"#).unwrap_err();
        assert!(err.to_string().contains("trails"));
    }

    #[test]
    fn algorithm_names_serialize_lowercase() {
        let text = serde_json::to_string(&ExperimentSpec::default()).unwrap();
        for name in ["\"omp\"", "\"fomp\"", "\"comp\"", "\"fcomp\""] {
            assert!(text.contains(name), "missing {name} in {text}");
        }
    }

    #[test]
    fn validation_rejects_bad_fields() {
        let base = ExperimentSpec::default();
        let cases: Vec<(ExperimentSpec, &str)> = vec![
            (
                ExperimentSpec {
                    trials: 0,
                    ..base.clone()
                },
                "trials",
            ),
            (
                ExperimentSpec {
                    targets_per_trial: 0,
                    ..base.clone()
                },
                "targets",
            ),
            (
                ExperimentSpec {
                    grid_sizes: vec![],
                    ..base.clone()
                },
                "grid_sizes",
            ),
            (
                ExperimentSpec {
                    grid_sizes: vec![16, 1],
                    ..base.clone()
                },
                "too small",
            ),
            (
                ExperimentSpec {
                    algorithms: vec![],
                    ..base.clone()
                },
                "algorithms",
            ),
            (
                ExperimentSpec {
                    algorithms: vec![Algorithm::Omp, Algorithm::Omp],
                    ..base.clone()
                },
                "twice",
            ),
            (
                ExperimentSpec {
                    noise_sigma: -0.1,
                    ..base.clone()
                },
                "noise_sigma",
            ),
            (
                ExperimentSpec {
                    min_separation_cells: f64::NAN,
                    ..base
                },
                "separation",
            ),
        ];
        for (spec, needle) in cases {
            let err = spec.validate().unwrap_err();
            assert_eq!(err.exit_code(), 2);
            assert!(err.to_string().contains(needle), "{err} missing '{needle}'");
        }
    }

    #[test]
    fn overrides_win_and_flags_only_enable() {
        let spec = ExperimentSpec::default().with_overrides(&Overrides {
            algorithms: Some(vec![Algorithm::Fcomp]),
            grid_sizes: Some(vec![8]),
            trials: Some(2),
            base_seed: Some(99),
            noise_sigma: Some(0.5),
            output_dir: Some(PathBuf::from("elsewhere")),
            emit_svg: true,
            parallel: false,
        });
        assert_eq!(spec.algorithms, vec![Algorithm::Fcomp]);
        assert_eq!(spec.grid_sizes, vec![8]);
        assert_eq!(spec.trials, 2);
        assert_eq!(spec.base_seed, 99);
        assert_eq!(spec.noise_sigma, 0.5);
        assert_eq!(spec.output_dir, PathBuf::from("elsewhere"));
        assert!(spec.emit_svg);
        assert!(!spec.parallel);

        let untouched = ExperimentSpec::default().with_overrides(&Overrides::default());
        assert_eq!(untouched, ExperimentSpec::default());
    }
}
