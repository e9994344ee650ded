use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::predictor::{factorial, Estimate, Predictor};
use super::regime::Regime;
use crate::functionals::AdmissibleSequence;
use crate::Result;

/// Which matrix family a limit is summed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaFamily {
    /// `A^{<1}_m`, `m = 0..=2k_n`, weighted by `c^{m/2}`.
    Below,
    /// `A^{>1}_m`, `m = 0..=k_n`, weighted by `c^{−m}`.
    Above,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitSigma {
    pub regime: Regime,
    pub family: SigmaFamily,
    pub matrix: DMatrix<f64>,
    pub std_errors: DMatrix<f64>,
    /// `(m, weight, A_m)` for every summed component.
    pub components: Vec<(usize, f64, DMatrix<f64>)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "rank", rename_all = "snake_case")]
pub enum RankPrediction {
    Exact(usize),
    /// Full rank except for finitely many unidentified values of `c`.
    Generic(usize),
}

/// Entry `(l, j)` of `A^{<1}_m`.
fn below_entry(p: &Predictor<'_>, seq: &AdmissibleSequence, l: usize, j: usize, m: usize) -> Result<Estimate> {
    let (sl, sj) = (seq.specs()[l], seq.specs()[j]);
    let (kl, kj) = (sl.k, sj.k);
    let gap = kl.abs_diff(kj);
    if m < gap || (m - gap) % 2 != 0 || m - gap > 2 * kl.min(kj) {
        return Ok(Estimate::exact(0.0));
    }
    let shared = (kl + kj + 2 - m) / 2;
    let left = (m + kj - kl) / 2;
    let right = (m + kl - kj) / 2;
    debug_assert_eq!(2 * shared + m, kl + kj + 2);
    let w = 1.0 / (factorial(shared) * factorial(left) * factorial(right));
    Ok(p.mixed(kl, kj, shared, sl.alpha, sj.alpha)?.scale(w))
}

/// Entry `(l, j)` of `A^{>1}_m`.
fn above_entry(p: &Predictor<'_>, seq: &AdmissibleSequence, l: usize, j: usize, m: usize) -> Result<Estimate> {
    let (sl, sj) = (seq.specs()[l], seq.specs()[j]);
    let (kl, kj) = (sl.k, sj.k);
    if m > kl.min(kj) {
        return Ok(Estimate::exact(0.0));
    }
    let w = 1.0 / (factorial(m + 1) * factorial(kl - m) * factorial(kj - m));
    Ok(p.mixed(kl, kj, m + 1, sl.alpha, sj.alpha)?.scale(w))
}

/// The matrix `A^{<1}_m` (`Below`) or `A^{>1}_m` (`Above`) with its errors.
pub fn sigma_component(
    p: &Predictor<'_>,
    seq: &AdmissibleSequence,
    family: SigmaFamily,
    m: usize,
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let n = seq.len();
    let mut a = DMatrix::zeros(n, n);
    let mut se = DMatrix::zeros(n, n);
    for l in 0..n {
        for j in l..n {
            let e = match family {
                SigmaFamily::Below => below_entry(p, seq, l, j, m)?,
                SigmaFamily::Above => above_entry(p, seq, l, j, m)?,
            };
            a[(l, j)] = e.value;
            a[(j, l)] = e.value;
            se[(l, j)] = e.std_error;
            se[(j, l)] = e.std_error;
        }
    }
    Ok((a, se))
}

/// `Σ_{m ∈ ms} w(m)·A_m` with errors combined in quadrature.
fn weighted_sum(
    p: &Predictor<'_>,
    seq: &AdmissibleSequence,
    regime: Regime,
    family: SigmaFamily,
    ms: impl Iterator<Item = (usize, f64)>,
) -> Result<LimitSigma> {
    let n = seq.len();
    let mut matrix = DMatrix::zeros(n, n);
    let mut var = DMatrix::<f64>::zeros(n, n);
    let mut components = Vec::new();
    for (m, w) in ms {
        let (a, se) = sigma_component(p, seq, family, m)?;
        matrix += &a * w;
        var += se.map(|s| (s * w).powi(2));
        components.push((m, w, a));
    }
    Ok(LimitSigma { regime, family, matrix, std_errors: var.map(f64::sqrt), components })
}

/// Limiting covariance of the normalized functionals in `regime`. The
/// thermodynamic case `c = 1` uses the `A^{<1}` family.
pub fn limiting_sigma(p: &Predictor<'_>, regime: Regime, seq: &AdmissibleSequence) -> Result<LimitSigma> {
    let k_n = seq.k_max();
    match regime {
        Regime::Sparse => weighted_sum(p, seq, regime, SigmaFamily::Below, std::iter::once((0, 1.0))),
        Regime::Dense => weighted_sum(p, seq, regime, SigmaFamily::Above, std::iter::once((0, 1.0))),
        Regime::Thermodynamic { c } if c <= 1.0 => {
            weighted_sum(p, seq, regime, SigmaFamily::Below, (0..=2 * k_n).map(|m| (m, c.powf(m as f64 / 2.0))))
        }
        Regime::Thermodynamic { c } => {
            weighted_sum(p, seq, regime, SigmaFamily::Above, (0..=k_n).map(|m| (m, c.powf(-(m as f64)))))
        }
    }
}

/// Thermodynamic limit summed from an explicit family, regardless of `c`.
pub fn thermodynamic_sigma(
    p: &Predictor<'_>,
    c: f64,
    seq: &AdmissibleSequence,
    family: SigmaFamily,
) -> Result<LimitSigma> {
    let k_n = seq.k_max();
    let regime = Regime::Thermodynamic { c };
    match family {
        SigmaFamily::Below => {
            weighted_sum(p, seq, regime, family, (0..=2 * k_n).map(|m| (m, c.powf(m as f64 / 2.0))))
        }
        SigmaFamily::Above => weighted_sum(p, seq, regime, family, (0..=k_n).map(|m| (m, c.powf(-(m as f64))))),
    }
}

pub fn rank_prediction(regime: Regime, seq: &AdmissibleSequence) -> RankPrediction {
    match regime {
        Regime::Sparse => RankPrediction::Exact(seq.len()),
        Regime::Dense => RankPrediction::Exact(1),
        Regime::Thermodynamic { .. } => RankPrediction::Generic(seq.len()),
    }
}
