//! Experiment harness around `fcomp-core`: JSON configuration, a paired
//! trial sweep over grid densities and algorithms, aggregation, and CSV,
//! manifest and SVG artifacts. The `fcomp` binary is a thin shell over
//! this library.

pub mod config;
pub mod error;
pub mod experiment;
pub mod output;
pub mod summary;
pub mod svg;

pub use config::{load_spec, ExperimentSpec, Overrides};
pub use error::{CliError, Result};
pub use experiment::{measurement_checksum, run_experiment, TrialRecord};
pub use output::{emit_outputs, OutputPaths};
pub use summary::{read_raw_csv, summarize, write_summary_csv, SummaryRow};
