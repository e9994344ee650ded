//! Monte Carlo estimates of the geometric constants `μ`, `ν` and their
//! mixed versions, a JSON cache for them, and generalized moment matrices.
//!
//! Every estimator integrates over uniform points in the unit ball and
//! returns the value together with its standard error. Work is split into
//! fixed batches with one random stream each, so results depend only on
//! `(n_samples, seed)`.

mod estimate;
mod matrix;
mod mc;
mod table;

pub use estimate::{
    estimate_mu, estimate_mu_10, estimate_mu_mixed, estimate_nu, estimate_nu_mixed, mu_one, mu_product_bound,
    sample_simplex_volumes, MomentEstimate, MomentKey, MomentKind, DEFAULT_SAMPLES,
};
pub use matrix::{moment_matrix, MomentMatrix};
pub use table::{estimate_key, MomentTable, TableEntry};
