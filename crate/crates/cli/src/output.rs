//! Artifact emission: raw CSV, summary CSV, a JSON manifest that is itself
//! a loadable config, and optional SVG charts.

use std::fs;
use std::path::PathBuf;

use crate::config::ExperimentSpec;
use crate::error::{CliError, Result};
use crate::experiment::TrialRecord;
use crate::summary::{self, SummaryRow};
use crate::svg;

#[derive(Debug, Clone, PartialEq)]
pub struct OutputPaths {
    pub raw_csv: PathBuf,
    pub summary_csv: PathBuf,
    pub manifest: PathBuf,
    pub miss_chart: Option<PathBuf>,
    pub time_chart: Option<PathBuf>,
}

/// Writes every artifact under `spec.output_dir`, creating it if needed.
/// The manifest is the experiment specification serialized back out, so
/// re-running with `--config manifest.json` reproduces the run.
pub fn emit_outputs(
    records: &[TrialRecord],
    rows: &[SummaryRow],
    spec: &ExperimentSpec,
) -> Result<OutputPaths> {
    let dir = &spec.output_dir;
    fs::create_dir_all(dir)
        .map_err(|e| CliError::failure(format!("creating {}: {e}", dir.display())))?;

    let raw_csv = dir.join("raw.csv");
    summary::write_raw_csv(&raw_csv, records)?;

    let summary_csv = dir.join("summary.csv");
    summary::write_summary_csv(&summary_csv, rows)?;

    let manifest = dir.join("manifest.json");
    let mut text = serde_json::to_string_pretty(spec)
        .map_err(|e| CliError::failure(format!("encoding manifest: {e}")))?;
    text.push('\n');
    fs::write(&manifest, text)
        .map_err(|e| CliError::failure(format!("writing {}: {e}", manifest.display())))?;

    let mut miss_chart = None;
    let mut time_chart = None;
    if spec.emit_svg {
        let miss = dir.join("miss_rate.svg");
        fs::write(&miss, svg::miss_rate_chart(rows))
            .map_err(|e| CliError::failure(format!("writing {}: {e}", miss.display())))?;
        miss_chart = Some(miss);
        let time = dir.join("solve_time.svg");
        fs::write(&time, svg::solve_time_chart(rows))
            .map_err(|e| CliError::failure(format!("writing {}: {e}", time.display())))?;
        time_chart = Some(time);
    }

    Ok(OutputPaths {
        raw_csv,
        summary_csv,
        manifest,
        miss_chart,
        time_chart,
    })
}
