use std::panic::{catch_unwind, AssertUnwindSafe};

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Validated};
use super::stats::{correlation, covariance, ks_to_normal, spectrum, KS_MIN_SAMPLES};
use crate::complex::{ComplexKind, NeighborGraph};
use crate::functionals::{evaluate_sequence_on, FunctionalSpec};
use crate::geometry::sample_poisson;
use crate::rng::replication_seed;
use crate::{Error, Result};

/// Functional values of one replication on one complex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepRow {
    pub rep: usize,
    pub seed: u64,
    pub complex: ComplexKind,
    pub values: Vec<f64>,
    pub face_counts: Vec<u64>,
}

/// A replication that returned an error or panicked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub rep: usize,
    pub seed: u64,
    pub message: String,
}

/// Aggregates over the successful replications of one complex kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub complex: ComplexKind,
    pub reps: usize,
    pub mean: Vec<f64>,
    pub mean_se: Vec<f64>,
    pub covariance: Vec<Vec<f64>>,
    pub covariance_se: Vec<Vec<f64>>,
    /// `None` when some functional has zero variance.
    pub correlation: Option<Vec<Vec<f64>>>,
    /// Eigenvalues of the correlation matrix, descending.
    pub correlation_spectrum: Option<Vec<f64>>,
    /// Per-spec KS distance to the normal law, when defined.
    pub ks: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub specs: Vec<FunctionalSpec>,
    /// Ordered by replication, then by the config's complex order.
    pub rows: Vec<RepRow>,
    pub failures: Vec<Failure>,
    pub summaries: Vec<Summary>,
}

pub(crate) fn to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

pub(crate) fn to_matrix(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Shape("matrix rows must form a square".into()));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

impl ExperimentResult {
    pub fn summary(&self, complex: ComplexKind) -> Option<&Summary> {
        self.summaries.iter().find(|s| s.complex == complex)
    }

    /// Values of spec `i` on `complex`, one per successful replication.
    pub fn column(&self, complex: ComplexKind, i: usize) -> Vec<f64> {
        self.rows.iter().filter(|r| r.complex == complex).map(|r| r.values[i]).collect()
    }
}

impl Summary {
    pub fn covariance_matrix(&self) -> DMatrix<f64> {
        to_matrix(&self.covariance).expect("square by construction")
    }

    pub fn covariance_se_matrix(&self) -> DMatrix<f64> {
        to_matrix(&self.covariance_se).expect("square by construction")
    }

    pub fn correlation_matrix(&self) -> Option<DMatrix<f64>> {
        self.correlation.as_ref().map(|c| to_matrix(c).expect("square by construction"))
    }
}

fn replicate(cfg: &ExperimentConfig, v: &Validated, rep: usize, seed: u64) -> Result<Vec<RepRow>> {
    let cloud = sample_poisson(&v.window, cfg.t, seed)?;
    let graph = NeighborGraph::build(&cloud, cfg.delta)?;
    cfg.complexes
        .iter()
        .map(|&complex| {
            let res = evaluate_sequence_on(&cloud, &graph, &v.seq, complex)?;
            Ok(RepRow {
                rep,
                seed,
                complex,
                values: res.iter().map(|r| r.value).collect(),
                face_counts: res.iter().map(|r| r.face_count).collect(),
            })
        })
        .collect()
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        (*s).to_owned()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic with a non-string payload".to_owned()
    }
}

/// Aggregates value rows of one complex kind.
pub fn summarize(complex: ComplexKind, values: &[Vec<f64>]) -> Result<Summary> {
    let r = values.len();
    let (cov, cov_se) = covariance(values)?;
    let n = cov.nrows();
    let mean: Vec<f64> = (0..n).map(|j| values.iter().map(|row| row[j]).sum::<f64>() / r as f64).collect();
    let mean_se: Vec<f64> = (0..n).map(|j| (cov[(j, j)] / r as f64).sqrt()).collect();
    let corr = correlation(&cov);
    let correlation_spectrum = corr.as_ref().map(spectrum).transpose()?;
    let ks = (0..n)
        .map(|j| {
            if r < KS_MIN_SAMPLES {
                return None;
            }
            let col: Vec<f64> = values.iter().map(|row| row[j]).collect();
            ks_to_normal(&col).ok()
        })
        .collect();
    Ok(Summary {
        complex,
        reps: r,
        mean,
        mean_se,
        covariance: to_rows(&cov),
        covariance_se: to_rows(&cov_se),
        correlation: corr.as_ref().map(to_rows),
        correlation_spectrum,
        ks,
    })
}

/// Runs `config.reps` independent replications. Replication `r` uses the
/// seed `replication_seed(config.seed, r)`; errors and panics are recorded
/// with that seed and excluded from the aggregates.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    let v = config.validate()?;
    let outcomes: Vec<std::result::Result<Vec<RepRow>, Failure>> = (0..config.reps)
        .into_par_iter()
        .map(|rep| {
            let seed = replication_seed(config.seed, rep as u64);
            match catch_unwind(AssertUnwindSafe(|| replicate(config, &v, rep, seed))) {
                Ok(Ok(rows)) => Ok(rows),
                Ok(Err(e)) => Err(Failure { rep, seed, message: e.to_string() }),
                Err(p) => Err(Failure { rep, seed, message: format!("panic: {}", panic_message(p)) }),
            }
        })
        .collect();
    let mut rows = Vec::with_capacity(config.reps * config.complexes.len());
    let mut failures = Vec::new();
    for o in outcomes {
        match o {
            Ok(r) => rows.extend(r),
            Err(f) => failures.push(f),
        }
    }
    let mut summaries = Vec::new();
    for &complex in &config.complexes {
        let values: Vec<Vec<f64>> = rows.iter().filter(|r| r.complex == complex).map(|r| r.values.clone()).collect();
        if values.len() < 2 {
            return Err(Error::Diagnostic(format!(
                "only {} of {} replications succeeded on the {} complex",
                values.len(),
                config.reps,
                complex.name()
            )));
        }
        summaries.push(summarize(complex, &values)?);
    }
    Ok(ExperimentResult { config: config.clone(), specs: v.seq.specs().to_vec(), rows, failures, summaries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoke_two_reps() {
        let cfg = ExperimentConfig::new(2, 5.0, 0.2, "0:0,1:0", 2, 3);
        let r = run_experiment(&cfg).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert!(r.failures.is_empty());
        let s = &r.summaries[0];
        assert!(s.mean.iter().all(|x| x.is_finite()));
        assert!(s.covariance.iter().flatten().all(|x| x.is_finite()));
    }

    #[test]
    fn deterministic() {
        let mut cfg = ExperimentConfig::new(2, 50.0, 0.15, "1:0,1:1,2:0", 20, 9);
        cfg.complexes = vec![ComplexKind::Rips, ComplexKind::Cech];
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows.len(), 40);
        for pair in a.rows.chunks(2) {
            assert_eq!(pair[0].rep, pair[1].rep);
            // the Čech complex is a subcomplex of the Rips complex
            assert!(pair[1].face_counts.iter().zip(&pair[0].face_counts).all(|(c, r)| c <= r));
        }
    }
}
