//! Budget sweeps: annotate a dataset once, run each selector at each budget,
//! evaluate the seed sets and write the results as CSV.

mod config;
mod report;
mod sweep;

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::selection::Algorithm;

pub use config::{parse_delay, parse_range, DelaySetting, ExperimentConfig, GraphFormat, ThresholdSetting};
pub use report::{compare_report, gap_percent_of_n, percent_more};
pub use sweep::{prepare_graph, run_cells, run_sweep, Sweep};

pub const CSV_HEADER: [&str; 8] = [
    "dataset",
    "algorithm",
    "budget",
    "spread_mean",
    "spread_stddev",
    "selection_seconds",
    "evaluation_trials",
    "seed_set_path",
];

/// One (algorithm, budget) cell of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub budget: u64,
    pub spread_mean: f64,
    pub spread_stddev: f64,
    pub selection_seconds: f64,
    pub evaluation_trials: u32,
    /// Relative to the directory of the CSV.
    pub seed_set_path: PathBuf,
}

/// Writes the results sorted by (dataset, algorithm name, budget), floats
/// with 4 decimals. Nothing is created when `results` is empty.
pub fn emit_csv(results: &[SweepResult], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if results.is_empty() {
        return Err(Error::NoResults);
    }
    let mut rows: Vec<&SweepResult> = results.iter().collect();
    rows.sort_by(|a, b| {
        (a.dataset.as_str(), a.algorithm.name(), a.budget).cmp(&(b.dataset.as_str(), b.algorithm.name(), b.budget))
    });
    let io = |e: csv::Error| match e.into_kind() {
        csv::ErrorKind::Io(e) => Error::io(path, e),
        other => Error::InvalidParameter(format!("csv: {other:?}")),
    };
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.write_record([
            r.dataset.clone(),
            r.algorithm.to_string(),
            r.budget.to_string(),
            format!("{:.4}", r.spread_mean),
            format!("{:.4}", r.spread_stddev),
            format!("{:.4}", r.selection_seconds),
            r.evaluation_trials.to_string(),
            r.seed_set_path.to_string_lossy().into_owned(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Parses a file written by [`emit_csv`].
pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<SweepResult>> {
    let path = path.as_ref();
    let mut r = csv::Reader::from_path(path).map_err(|e| Error::parse(path, 0, e.to_string()))?;
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| Error::parse(path, line, e.to_string()))?;
        if rec.len() != CSV_HEADER.len() {
            return Err(Error::parse(path, line, format!("expected 8 fields, found {}", rec.len())));
        }
        let bad = |field: &str| Error::parse(path, line, format!("bad {field}"));
        out.push(SweepResult {
            dataset: rec[0].to_owned(),
            algorithm: rec[1].parse().map_err(|_| bad("algorithm"))?,
            budget: rec[2].parse().map_err(|_| bad("budget"))?,
            spread_mean: rec[3].parse().map_err(|_| bad("spread_mean"))?,
            spread_stddev: rec[4].parse().map_err(|_| bad("spread_stddev"))?,
            selection_seconds: rec[5].parse().map_err(|_| bad("selection_seconds"))?,
            evaluation_trials: rec[6].parse().map_err(|_| bad("evaluation_trials"))?,
            seed_set_path: PathBuf::from(&rec[7]),
        });
    }
    Ok(out)
}
