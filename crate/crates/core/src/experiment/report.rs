use std::io::Write;

use serde::{Deserialize, Serialize};

use super::compare::PredictionReport;
use super::config::ExperimentConfig;
use super::run::{ExperimentResult, Failure, Summary};
use crate::Result;

/// Aggregate report of a `simulate` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub summaries: Vec<Summary>,
    pub failures: Vec<Failure>,
    pub predictions: Option<Vec<PredictionReport>>,
}

impl ExperimentReport {
    pub fn new(result: &ExperimentResult, predictions: Option<Vec<PredictionReport>>) -> Self {
        ExperimentReport {
            config: result.config.clone(),
            summaries: result.summaries.clone(),
            failures: result.failures.clone(),
            predictions,
        }
    }

    /// `true` unless some prediction check failed or a replication failed.
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty() && self.predictions.iter().flatten().all(PredictionReport::all_pass)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

/// Per-replication rows as CSV, preceded by `#` comment lines carrying
/// the full config.
pub fn write_rows_csv<W: Write>(mut out: W, result: &ExperimentResult) -> Result<()> {
    writeln!(out, "# config: {}", serde_json::to_string(&result.config)?)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["rep_id", "complex", "k", "alpha", "value", "f_k", "t", "delta", "seed"])
        .map_err(csv_error)?;
    let cfg = &result.config;
    for row in &result.rows {
        for (i, spec) in result.specs.iter().enumerate() {
            w.write_record(&[
                row.rep.to_string(),
                row.complex.name().to_owned(),
                spec.k.to_string(),
                spec.alpha.to_string(),
                row.values[i].to_string(),
                row.face_counts[i].to_string(),
                cfg.t.to_string(),
                cfg.delta.to_string(),
                row.seed.to_string(),
            ])
            .map_err(csv_error)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> crate::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => crate::Error::Io(io),
        other => crate::Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}
