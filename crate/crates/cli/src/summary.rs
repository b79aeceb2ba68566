//! Aggregation of trial records into per-(algorithm, grid density) rows,
//! plus the CSV read/write paths. The summary is always recomputable from
//! the raw CSV: both go through the same arithmetic.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use fcomp_core::Algorithm;

use crate::error::{CliError, Result};
use crate::experiment::TrialRecord;

/// Aggregate over all trials of one algorithm at one grid density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub algo: Algorithm,
    pub n_star: usize,
    pub trials: usize,
    /// Fraction of targets missed: total misses / (K · trials).
    pub miss_rate: f64,
    /// Normal-approximation 95% half-width for the miss rate.
    pub miss_ci95: f64,
    pub time_median_ns: f64,
    pub time_mean_ns: f64,
}

fn median(sorted: &[u64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2] as f64
    } else {
        (sorted[n / 2 - 1] as f64 + sorted[n / 2] as f64) / 2.0
    }
}

/// Rows come out sorted by algorithm (declaration order: omp, fomp, comp,
/// fcomp), then by grid density. Empty input yields an empty summary.
pub fn summarize(records: &[TrialRecord]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(usize, usize), Vec<&TrialRecord>> = BTreeMap::new();
    for r in records {
        let rank = Algorithm::ALL
            .iter()
            .position(|a| *a == r.algo)
            .expect("every algorithm is in ALL");
        groups.entry((rank, r.n_star)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((rank, n_star), rows)| {
            let trials = rows.len();
            let targets: usize = rows.iter().map(|r| r.k).sum();
            let misses: usize = rows.iter().map(|r| r.misses).sum();
            let miss_rate = if targets == 0 {
                0.0
            } else {
                misses as f64 / targets as f64
            };
            let miss_ci95 = if targets == 0 {
                0.0
            } else {
                1.96 * (miss_rate * (1.0 - miss_rate) / targets as f64).sqrt()
            };
            let mut times: Vec<u64> = rows.iter().map(|r| r.time_total_ns).collect();
            times.sort_unstable();
            let time_mean_ns = times.iter().map(|&t| t as f64).sum::<f64>() / trials as f64;
            SummaryRow {
                algo: Algorithm::ALL[rank],
                n_star,
                trials,
                miss_rate,
                miss_ci95,
                time_median_ns: median(&times),
                time_mean_ns,
            }
        })
        .collect()
}

fn io_err(what: &str, path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::failure(format!("{what} {}: {e}", path.display()))
}

pub fn write_raw_csv(path: &Path, records: &[TrialRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| io_err("writing", path, e))?;
    for r in records {
        w.serialize(r).map_err(|e| io_err("writing", path, e))?;
    }
    w.flush().map_err(|e| io_err("writing", path, e))
}

pub fn read_raw_csv(path: &Path) -> Result<Vec<TrialRecord>> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| io_err("reading", path, e))?;
    rdr.deserialize()
        .collect::<std::result::Result<Vec<TrialRecord>, _>>()
        .map_err(|e| io_err("reading", path, e))
}

pub fn write_summary_csv(path: &Path, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| io_err("writing", path, e))?;
    for row in rows {
        w.serialize(row).map_err(|e| io_err("writing", path, e))?;
    }
    w.flush().map_err(|e| io_err("writing", path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(
        algo: Algorithm,
        n_star: usize,
        trial: usize,
        misses: usize,
        k: usize,
    ) -> TrialRecord {
        TrialRecord {
            algo,
            n_star,
            trial,
            seed: trial as u64,
            time_total_ns: 100 + trial as u64,
            time_select_ns: 60,
            time_refit_ns: 30,
            time_correct_ns: 10,
            misses,
            k,
            distances: vec![0.0; k],
        }
    }

    #[test]
    fn all_hits_summarize_to_zero_miss_rate() {
        let records: Vec<_> = (0..10)
            .map(|t| record(Algorithm::Fcomp, 16, t, 0, 5))
            .collect();
        let rows = summarize(&records);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].miss_rate, 0.0);
        assert_eq!(rows[0].miss_ci95, 0.0);
        assert_eq!(rows[0].trials, 10);
    }

    #[test]
    fn miss_rate_is_misses_over_targets() {
        // 10 misses spread over 200 trials of 5 targets -> 10/1000.
        let records: Vec<_> = (0..200)
            .map(|t| record(Algorithm::Omp, 32, t, usize::from(t < 10), 5))
            .collect();
        let rows = summarize(&records);
        assert_eq!(rows[0].miss_rate, 0.01);
        let want_ci = 1.96 * (0.01f64 * 0.99 / 1000.0).sqrt();
        assert!((rows[0].miss_ci95 - want_ci).abs() < 1e-15);
    }

    #[test]
    fn median_handles_even_and_odd_counts() {
        assert_eq!(median(&[3]), 3.0);
        assert_eq!(median(&[1, 3]), 2.0);
        assert_eq!(median(&[1, 3, 10]), 3.0);
        assert_eq!(median(&[1, 3, 10, 11]), 6.5);
    }

    #[test]
    fn rows_sort_by_algorithm_then_density() {
        let records = vec![
            record(Algorithm::Fcomp, 32, 0, 0, 1),
            record(Algorithm::Omp, 64, 0, 0, 1),
            record(Algorithm::Fcomp, 16, 0, 0, 1),
            record(Algorithm::Omp, 16, 0, 0, 1),
        ];
        let rows = summarize(&records);
        let order: Vec<_> = rows.iter().map(|r| (r.algo, r.n_star)).collect();
        assert_eq!(
            order,
            vec![
                (Algorithm::Omp, 16),
                (Algorithm::Omp, 64),
                (Algorithm::Fcomp, 16),
                (Algorithm::Fcomp, 32),
            ]
        );
    }

    #[test]
    fn empty_input_yields_empty_summary() {
        assert!(summarize(&[]).is_empty());
    }

    #[test]
    fn raw_csv_round_trip_preserves_everything_but_distances() {
        let records: Vec<_> = (0..4)
            .map(|t| record(Algorithm::Comp, 16, t, t % 2, 3))
            .collect();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("raw.csv");
        write_raw_csv(&path, &records).unwrap();

        let header = std::fs::read_to_string(&path).unwrap();
        assert!(header.starts_with(
            "algo,n_star,trial,seed,time_total_ns,time_select_ns,time_refit_ns,time_correct_ns,misses,k\n"
        ));

        let back = read_raw_csv(&path).unwrap();
        assert_eq!(back.len(), records.len());
        for (b, r) in back.iter().zip(&records) {
            assert!(b.distances.is_empty());
            let mut r = r.clone();
            r.distances.clear();
            assert_eq!(*b, r);
        }
        // Aggregates recomputed from disk match the in-memory ones exactly.
        assert_eq!(summarize(&back), summarize(&records));
    }

    #[test]
    fn summary_csv_has_the_documented_header() {
        let rows = summarize(&[record(Algorithm::Fomp, 16, 0, 1, 5)]);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("summary.csv");
        write_summary_csv(&path, &rows).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text
            .starts_with("algo,n_star,trials,miss_rate,miss_ci95,time_median_ns,time_mean_ns\n"));
        assert!(text.contains("fomp,16,1,0.2,"));
    }
}
