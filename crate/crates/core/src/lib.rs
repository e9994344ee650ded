//! Volume-power functionals of random Vietoris-Rips and Čech complexes built
//! over Poisson point processes.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: observation windows, Poisson sampling, simplex volumes and
//!   smallest enclosing balls.
//! * [`complex`]: the Gilbert graph on a uniform grid and duplicate-free
//!   enumeration of Rips and Čech faces.
//! * [`functionals`]: `V_k^(α)`, f-vectors and typical-simplex estimators.
//! * [`moments`]: Monte Carlo estimates of the geometric constants and
//!   generalized moment matrices.
//! * [`asymptotics`]: leading-order expectations, covariances, limiting
//!   covariance matrices and CLT rate shapes.
//! * [`experiment`]: replication engine, statistics and reports.

pub mod asymptotics;
pub mod complex;
pub mod error;
pub mod experiment;
pub mod functionals;
pub mod geometry;
pub mod moments;
pub mod rng;

pub use error::{Error, Result};

/// Largest ambient dimension supported by the fixed-size geometric kernels.
pub const MAX_DIM: usize = 8;
