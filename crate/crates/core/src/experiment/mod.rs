//! Replication engine and statistics: independent simulations, empirical
//! moments, comparisons against predictions, CLT diagnostics and reports.
//!
//! Replication `r` of a run draws its cloud from seed
//! `replication_seed(master, r)`, so any single replication can be rerun
//! alone and aggregates do not depend on scheduling.

mod compare;
mod config;
mod report;
mod run;
mod stats;

pub use compare::{
    clt_sweep, compare_predictions, run_sandwich, sandwich_check, CltPoint, CltReport, PredictionReport,
    SandwichCounts, SandwichReport, CLT_NOTE,
};
pub use config::{ExperimentConfig, Standardize, Validated};
pub use report::{from_json, to_json, write_rows_csv, ExperimentReport};
pub use run::{run_experiment, summarize, ExperimentResult, Failure, RepRow, Summary};
pub use stats::{
    correlation, covariance, covariance_compare, ks_to_normal, ks_to_normal_with, mean, spectrum, spectrum_rank,
    variance, Check, TolerancePolicy, KS_MIN_SAMPLES, RANK_THRESHOLD,
};
