use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::{Error, Result};

/// Minimum sample size for a Kolmogorov-Smirnov diagnostic.
pub const KS_MIN_SAMPLES: usize = 50;

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance.
pub fn variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

/// Sample covariance matrix of the columns of `rows` (one row per
/// replication) together with the standard error of every entry,
/// estimated from the spread of the centred products.
pub fn covariance(rows: &[Vec<f64>]) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let r = rows.len();
    if r < 2 {
        return Err(Error::param(format!("covariance needs at least 2 replications, got {r}")));
    }
    let n = rows[0].len();
    if rows.iter().any(|row| row.len() != n) {
        return Err(Error::Shape("ragged replication rows".into()));
    }
    let means: Vec<f64> = (0..n).map(|j| rows.iter().map(|row| row[j]).sum::<f64>() / r as f64).collect();
    let mut cov = DMatrix::zeros(n, n);
    let mut se = DMatrix::zeros(n, n);
    let rf = r as f64;
    for i in 0..n {
        for j in i..n {
            let prods: Vec<f64> = rows.iter().map(|row| (row[i] - means[i]) * (row[j] - means[j])).collect();
            let c = prods.iter().sum::<f64>() / (rf - 1.0);
            let spread = if r > 2 { (variance(&prods) / rf).sqrt() } else { f64::INFINITY };
            cov[(i, j)] = c;
            cov[(j, i)] = c;
            se[(i, j)] = spread;
            se[(j, i)] = spread;
        }
    }
    Ok((cov, se))
}

/// Correlation matrix, or `None` when some coordinate has zero variance.
pub fn correlation(cov: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let n = cov.nrows();
    let sd: Vec<f64> = (0..n).map(|i| cov[(i, i)].sqrt()).collect();
    if sd.iter().any(|&s| !(s > 0.0)) {
        return None;
    }
    Some(DMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { cov[(i, j)] / (sd[i] * sd[j]) }))
}

/// Kolmogorov distance between the empirical CDF of `(x − mean)/sd` and the
/// standard normal CDF.
pub fn ks_to_normal_with(samples: &[f64], mean: f64, sd: f64) -> Result<f64> {
    if samples.len() < KS_MIN_SAMPLES {
        return Err(Error::Diagnostic(format!(
            "KS needs at least {KS_MIN_SAMPLES} samples, got {}",
            samples.len()
        )));
    }
    if !(sd > 0.0 && sd.is_finite()) {
        return Err(Error::Diagnostic("degenerate samples: zero variance".into()));
    }
    let normal = Normal::standard();
    let mut z: Vec<f64> = samples.iter().map(|x| (x - mean) / sd).collect();
    z.sort_by(f64::total_cmp);
    let n = z.len() as f64;
    let mut sup: f64 = 0.0;
    for (i, &zi) in z.iter().enumerate() {
        let f = normal.cdf(zi);
        sup = sup.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    Ok(sup)
}

/// [`ks_to_normal_with`] standardized by the sample mean and sample SD.
pub fn ks_to_normal(samples: &[f64]) -> Result<f64> {
    if samples.len() < 2 {
        return ks_to_normal_with(samples, 0.0, 1.0);
    }
    ks_to_normal_with(samples, mean(samples), variance(samples).sqrt())
}

/// Eigenvalues of a symmetric matrix, descending.
pub fn spectrum(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::Shape(format!("{}x{} matrix is not square", m.nrows(), m.ncols())));
    }
    let scale = m.amax().max(f64::MIN_POSITIVE);
    if (m - m.transpose()).amax() > 1e-12 * scale {
        return Err(Error::Shape("matrix is not symmetric".into()));
    }
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    Ok(ev)
}

/// Default relative eigenvalue threshold for [`spectrum_rank`].
pub const RANK_THRESHOLD: f64 = 0.05;

/// Number of eigenvalues above `threshold·λ_max`.
pub fn spectrum_rank(m: &DMatrix<f64>, threshold: f64) -> Result<usize> {
    let ev = spectrum(m)?;
    let top = ev.first().copied().unwrap_or(0.0);
    Ok(ev.iter().filter(|&&l| l > threshold * top).count())
}

/// Statistical band `se_multiplier·SE` plus a relative bias slack of
/// `bias_slack·δ` times the prediction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolerancePolicy {
    pub se_multiplier: f64,
    pub bias_slack: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy { se_multiplier: 3.0, bias_slack: 2.0 }
    }
}

impl TolerancePolicy {
    pub fn band(&self, empirical_se: f64, predicted_se: f64, predicted: f64, delta: f64) -> f64 {
        self.se_multiplier * (empirical_se + predicted_se) + self.bias_slack * delta * predicted.abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub empirical: f64,
    pub empirical_se: f64,
    pub predicted: f64,
    pub predicted_se: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        (empirical, empirical_se): (f64, f64),
        (predicted, predicted_se): (f64, f64),
        policy: &TolerancePolicy,
        delta: f64,
    ) -> Self {
        let tolerance = policy.band(empirical_se, predicted_se, predicted, delta);
        Check {
            name: name.into(),
            empirical,
            empirical_se,
            predicted,
            predicted_se,
            tolerance,
            pass: (empirical - predicted).abs() <= tolerance,
        }
    }
}

/// Entrywise comparison of an empirical and a predicted covariance matrix.
pub fn covariance_compare(
    empirical: &DMatrix<f64>,
    empirical_se: &DMatrix<f64>,
    predicted: &DMatrix<f64>,
    predicted_se: &DMatrix<f64>,
    policy: &TolerancePolicy,
    delta: f64,
) -> Result<Vec<Check>> {
    let shape = empirical.shape();
    if predicted.shape() != shape || empirical_se.shape() != shape || predicted_se.shape() != shape {
        return Err(Error::Shape(format!(
            "empirical {:?} vs predicted {:?}",
            shape,
            predicted.shape()
        )));
    }
    let mut out = Vec::new();
    for i in 0..shape.0 {
        for j in i..shape.1 {
            out.push(Check::new(
                format!("cov[{i},{j}]"),
                (empirical[(i, j)], empirical_se[(i, j)]),
                (predicted[(i, j)], predicted_se[(i, j)]),
                policy,
                delta,
            ));
        }
    }
    Ok(out)
}
