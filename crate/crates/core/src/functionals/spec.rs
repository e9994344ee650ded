use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A `(k, α)` pair: face dimension and volume exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionalSpec {
    pub k: usize,
    pub alpha: f64,
}

impl FunctionalSpec {
    /// Checks integrability in ambient dimension `d`: `α = 0` above the
    /// dimension, `α > −d` otherwise.
    pub fn new(k: usize, alpha: f64, d: usize) -> Result<Self> {
        let s = Self { k, alpha };
        s.check(d)?;
        Ok(s)
    }

    fn check(&self, d: usize) -> Result<()> {
        if !self.alpha.is_finite() {
            return Err(Error::Admissibility {
                clause: "finite exponent",
                detail: format!("alpha = {}", self.alpha),
            });
        }
        if self.k > d && self.alpha != 0.0 {
            return Err(Error::Admissibility {
                clause: "(iii) alpha = 0 for k > d",
                detail: format!("k = {} > d = {d} with alpha = {}", self.k, self.alpha),
            });
        }
        if self.k <= d && self.alpha <= -(d as f64) {
            return Err(Error::Admissibility {
                clause: "(iv) alpha > -d",
                detail: format!("alpha = {} with d = {d}", self.alpha),
            });
        }
        Ok(())
    }

    /// `α > −d/2`, needed for a finite variance.
    pub fn clt_admissible(&self, d: usize) -> bool {
        self.k > d || 2.0 * self.alpha > -(d as f64)
    }
}

impl fmt::Display for FunctionalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.k, self.alpha)
    }
}

/// `(k_1, α_1), …, (k_n, α_n)` with `k` non-decreasing, distinct pairs,
/// `α_i = 0` for `k_i > d`, and `min{α_i, α_j, α_i + α_j} > −d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleSequence {
    specs: Vec<FunctionalSpec>,
    dim: usize,
}

impl AdmissibleSequence {
    pub fn new(specs: Vec<FunctionalSpec>, dim: usize) -> Result<Self> {
        if specs.is_empty() {
            return Err(Error::Admissibility { clause: "non-empty", detail: "no specs given".into() });
        }
        for w in specs.windows(2) {
            if w[0].k > w[1].k {
                return Err(Error::Admissibility {
                    clause: "(i) k nondecreasing",
                    detail: format!("{} precedes {}", w[0], w[1]),
                });
            }
        }
        for (i, a) in specs.iter().enumerate() {
            if specs[..i].iter().any(|b| b.k == a.k && b.alpha == a.alpha) {
                return Err(Error::Admissibility {
                    clause: "(ii) distinct pairs",
                    detail: format!("{a} repeated"),
                });
            }
            a.check(dim)?;
        }
        let d = -(dim as f64);
        for a in &specs {
            for b in &specs {
                if a.k <= dim && b.k <= dim && a.alpha + b.alpha <= d {
                    return Err(Error::Admissibility {
                        clause: "(iv) min{a_i, a_j, a_i + a_j} > -d",
                        detail: format!("{a} and {b} with d = {dim}"),
                    });
                }
            }
        }
        Ok(Self { specs, dim })
    }

    /// Parses `k:alpha[,k:alpha...]`.
    pub fn parse(text: &str, dim: usize) -> Result<Self> {
        let specs = text
            .split(',')
            .map(|item| {
                let item = item.trim();
                let (k, a) = item
                    .split_once(':')
                    .ok_or_else(|| Error::param(format!("spec `{item}` is not k:alpha")))?;
                let k: usize = k
                    .trim()
                    .parse()
                    .map_err(|e| Error::param(format!("spec `{item}`: bad k: {e}")))?;
                let alpha: f64 = a
                    .trim()
                    .parse()
                    .map_err(|e| Error::param(format!("spec `{item}`: bad alpha: {e}")))?;
                Ok(FunctionalSpec { k, alpha })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(specs, dim)
    }

    pub fn specs(&self) -> &[FunctionalSpec] {
        &self.specs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.specs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }

    pub fn k_max(&self) -> usize {
        self.specs.iter().map(|s| s.k).max().unwrap_or(0)
    }
}

impl fmt::Display for AdmissibleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.specs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
