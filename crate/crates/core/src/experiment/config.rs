use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::stats::TolerancePolicy;
use crate::asymptotics::RegimeSpec;
use crate::complex::ComplexKind;
use crate::functionals::AdmissibleSequence;
use crate::geometry::{Window, WindowKind};
use crate::{Error, Result};

/// How KS statistics standardize replication values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Standardize {
    /// Sample mean and sample standard deviation.
    #[default]
    Empirical,
    /// Predicted mean and predicted variance (needs the moment table).
    Predicted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub window: WindowKind,
    pub dim: usize,
    pub t: f64,
    pub delta: f64,
    /// Schedule `δ = a·t^{−β}` that produced `delta`, kept for provenance.
    pub regime: Option<RegimeSpec>,
    /// Functional specs as `k:alpha[,k:alpha...]`.
    pub specs: String,
    pub complexes: Vec<ComplexKind>,
    pub reps: usize,
    pub seed: u64,
    pub moments_cache: Option<PathBuf>,
    pub policy: TolerancePolicy,
    pub standardize: Standardize,
}

/// Checked pieces of a config.
#[derive(Debug, Clone)]
pub struct Validated {
    pub window: Window,
    pub seq: AdmissibleSequence,
}

fn field(field: &'static str, message: impl Into<String>) -> Error {
    Error::Config { field, message: message.into() }
}

impl ExperimentConfig {
    /// Unit-cube Rips run with default policy.
    pub fn new(dim: usize, t: f64, delta: f64, specs: &str, reps: usize, seed: u64) -> Self {
        ExperimentConfig {
            window: WindowKind::UnitCube,
            dim,
            t,
            delta,
            regime: None,
            specs: specs.to_owned(),
            complexes: vec![ComplexKind::Rips],
            reps,
            seed,
            moments_cache: None,
            policy: TolerancePolicy::default(),
            standardize: Standardize::Empirical,
        }
    }

    /// Run at intensity `t` with `δ` taken from `regime`.
    pub fn with_regime(mut self, regime: RegimeSpec) -> Self {
        self.delta = regime.delta(self.t);
        self.regime = Some(regime);
        self
    }

    pub fn validate(&self) -> Result<Validated> {
        let window = Window::new(self.window, self.dim).map_err(|e| field("dim", e.to_string()))?;
        if !(self.t.is_finite() && self.t > 0.0) {
            return Err(field("t", format!("must be positive, got {}", self.t)));
        }
        if !(self.delta.is_finite() && self.delta > 0.0) {
            return Err(field("delta", format!("must be positive, got {}", self.delta)));
        }
        if self.delta >= window.diameter() {
            return Err(field("delta", format!("must be below the window diameter {}", window.diameter())));
        }
        if let Some(r) = self.regime {
            let expect = r.delta(self.t);
            if (expect - self.delta).abs() > 1e-12 * expect {
                return Err(field("regime", format!("schedule gives delta = {expect}, config has {}", self.delta)));
            }
        }
        let seq = AdmissibleSequence::parse(&self.specs, self.dim).map_err(|e| field("specs", e.to_string()))?;
        if self.complexes.is_empty() {
            return Err(field("complexes", "at least one complex kind is required"));
        }
        if (1..self.complexes.len()).any(|i| self.complexes[..i].contains(&self.complexes[i])) {
            return Err(field("complexes", "duplicate complex kind"));
        }
        if self.reps < 2 {
            return Err(field("reps", format!("need at least 2 replications, got {}", self.reps)));
        }
        let p = &self.policy;
        if !(p.se_multiplier >= 0.0 && p.bias_slack >= 0.0) {
            return Err(field("policy", "multipliers must be non-negative"));
        }
        Ok(Validated { window, seq })
    }
}
