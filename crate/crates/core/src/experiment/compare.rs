use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Standardize};
use super::run::{run_experiment, ExperimentResult};
use super::stats::{covariance_compare, ks_to_normal_with, Check, KS_MIN_SAMPLES};
use crate::asymptotics::{clt_rate_bound, sandwich_factor, Predictor, RegimeSpec};
use crate::complex::{enumerate_faces, ComplexKind, FaceStream};
use crate::functionals::AdmissibleSequence;
use crate::geometry::{sample_poisson, PointCloud};
use crate::moments::MomentTable;
use crate::rng::replication_seed;
use crate::{Error, Result};

/// Prediction checks for one complex kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionReport {
    pub complex: ComplexKind,
    pub checks: Vec<Check>,
    /// KS distances standardized by the predicted mean and variance; only
    /// filled when the config asks for it.
    pub ks_predicted: Option<Vec<Option<f64>>>,
}

impl PredictionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Compares every summary of `result` with the leading-order predictions.
pub fn compare_predictions(result: &ExperimentResult, table: &MomentTable) -> Result<Vec<PredictionReport>> {
    let cfg = &result.config;
    let seq = AdmissibleSequence::parse(&cfg.specs, cfg.dim)?;
    result
        .summaries
        .iter()
        .map(|s| {
            let p = Predictor::new(table, s.complex, cfg.dim);
            let mut checks = Vec::new();
            let mut means = Vec::new();
            for (i, spec) in seq.specs().iter().enumerate() {
                let e = p.expected_functional(cfg.t, cfg.delta, *spec)?;
                means.push(e.value);
                checks.push(Check::new(
                    format!("mean[{spec}]"),
                    (s.mean[i], s.mean_se[i]),
                    (e.value, e.std_error),
                    &cfg.policy,
                    cfg.delta,
                ));
            }
            let cov = p.covariance_prediction(cfg.t, cfg.delta, &seq)?;
            checks.extend(covariance_compare(
                &s.covariance_matrix(),
                &s.covariance_se_matrix(),
                &cov.matrix,
                &cov.std_errors,
                &cfg.policy,
                cfg.delta,
            )?);
            let ks_predicted = (cfg.standardize == Standardize::Predicted).then(|| {
                (0..seq.len())
                    .map(|i| {
                        let col = result.column(s.complex, i);
                        if col.len() < KS_MIN_SAMPLES {
                            return None;
                        }
                        ks_to_normal_with(&col, means[i], cov.matrix[(i, i)].sqrt()).ok()
                    })
                    .collect()
            });
            Ok(PredictionReport { complex: s.complex, checks, ks_predicted })
        })
        .collect()
}

/// Face-set inclusion counts for `Čech(δ) ⊆ Rips(δ) ⊆ Čech(rδ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SandwichCounts {
    pub faces_checked: u64,
    pub violations: u64,
}

impl SandwichCounts {
    fn add(&mut self, o: SandwichCounts) {
        self.faces_checked += o.faces_checked;
        self.violations += o.violations;
    }
}

fn inclusion(inner: &[FaceStream], outer: &[FaceStream]) -> SandwichCounts {
    let mut c = SandwichCounts::default();
    for (a, b) in inner.iter().zip(outer) {
        for f in a.faces() {
            c.faces_checked += 1;
            if !b.contains(f) {
                c.violations += 1;
            }
        }
    }
    c
}

/// Checks both inclusions of the sandwich for faces up to dimension `k_max`
/// and returns the f-vectors of the three complexes.
pub fn sandwich_check(cloud: &PointCloud, delta: f64, k_max: usize) -> Result<(SandwichCounts, [Vec<u64>; 3])> {
    let r = sandwich_factor(cloud.dim());
    let cech = enumerate_faces(cloud, delta, ComplexKind::Cech, k_max, false)?;
    let rips = enumerate_faces(cloud, delta, ComplexKind::Rips, k_max, false)?;
    let wide = enumerate_faces(cloud, r * delta, ComplexKind::Cech, k_max, false)?;
    let mut counts = inclusion(&cech, &rips);
    counts.add(inclusion(&rips, &wide));
    let fv = |s: &[FaceStream]| s.iter().map(|x| x.len() as u64).collect();
    Ok((counts, [fv(&cech), fv(&rips), fv(&wide)]))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub config: ExperimentConfig,
    pub scale_factor: f64,
    pub counts: SandwichCounts,
    /// Mean f-vectors of Čech(δ), Rips(δ) and Čech(rδ).
    pub mean_f_cech: Vec<f64>,
    pub mean_f_rips: Vec<f64>,
    pub mean_f_cech_scaled: Vec<f64>,
}

/// Runs the sandwich comparison on `config.reps` clouds.
pub fn run_sandwich(config: &ExperimentConfig) -> Result<SandwichReport> {
    let v = config.validate()?;
    let k_max = v.seq.k_max();
    let mut counts = SandwichCounts::default();
    let mut sums = [vec![0.0; k_max + 1], vec![0.0; k_max + 1], vec![0.0; k_max + 1]];
    for rep in 0..config.reps {
        let cloud = sample_poisson(&v.window, config.t, replication_seed(config.seed, rep as u64))?;
        let (c, fvs) = sandwich_check(&cloud, config.delta, k_max)?;
        counts.add(c);
        for (s, f) in sums.iter_mut().zip(&fvs) {
            for (a, &b) in s.iter_mut().zip(f) {
                *a += b as f64;
            }
        }
    }
    let r = config.reps as f64;
    let [a, b, c] = sums.map(|s| s.into_iter().map(|x| x / r).collect::<Vec<_>>());
    Ok(SandwichReport {
        config: config.clone(),
        scale_factor: sandwich_factor(config.dim),
        counts,
        mean_f_cech: a,
        mean_f_rips: b,
        mean_f_cech_scaled: c,
    })
}

/// One intensity of a CLT sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CltPoint {
    pub t: f64,
    pub delta: f64,
    pub ks: Vec<Option<f64>>,
    /// `t^{−1/2}·max{(tδ^d)^{−k/2}, 1}` with `k = k_max`; constant unknown.
    pub rate_shape: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CltReport {
    pub config: ExperimentConfig,
    pub points: Vec<CltPoint>,
    pub note: String,
}

/// Printed with every sweep: the multivariate statement is in a smooth
/// test-function distance that has no direct estimator.
pub const CLT_NOTE: &str = "univariate KS per coordinate stands in for the d3 distance of the \
multivariate statement; compare covariances with `simulate` for the joint law";

/// KS distance to the normal law along `ts` with `δ` from `regime`.
pub fn clt_sweep(base: &ExperimentConfig, regime: RegimeSpec, ts: &[f64]) -> Result<CltReport> {
    if ts.is_empty() {
        return Err(Error::Config { field: "t", message: "sweep needs at least one intensity".into() });
    }
    let seq = base.validate()?.seq;
    let mut points = Vec::with_capacity(ts.len());
    for &t in ts {
        let cfg = ExperimentConfig { t, ..base.clone() }.with_regime(regime);
        let res = run_experiment(&cfg)?;
        let s = &res.summaries[0];
        points.push(CltPoint {
            t,
            delta: cfg.delta,
            ks: s.ks.clone(),
            rate_shape: clt_rate_bound(t, cfg.delta, seq.k_max(), cfg.dim),
        });
    }
    Ok(CltReport { config: base.clone(), points, note: CLT_NOTE.to_owned() })
}
