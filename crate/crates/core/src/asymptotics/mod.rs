//! Leading-order predictions: expectations, covariances, normalizers,
//! limiting covariance matrices per regime, their ranks and the shape of
//! the CLT rate.
//!
//! All formulas read their geometric constants from a
//! [`MomentTable`](crate::moments::MomentTable) through a [`Predictor`];
//! a Čech predictor swaps every `μ` for the corresponding `ν`.

mod predictor;
mod regime;
mod sigma;

pub use predictor::{
    clt_rate_bound, normalizer_q, CovariancePrediction, CovarianceTerm, Estimate, Predictor,
};
pub use regime::{Regime, RegimeSpec};
pub use sigma::{limiting_sigma, rank_prediction, sigma_component, thermodynamic_sigma, LimitSigma, RankPrediction, SigmaFamily};

/// Scale factor between the Rips and Čech filtrations: with
/// `r = sqrt(2d/(d+1))`, `Čech(δ) ⊆ Rips(δ) ⊆ Čech(r·δ)`.
pub fn sandwich_factor(d: usize) -> f64 {
    (2.0 * d as f64 / (d as f64 + 1.0)).sqrt()
}
