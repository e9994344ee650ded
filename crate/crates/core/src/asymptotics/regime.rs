use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Relative tolerance for deciding `β = 1/d`.
const CRITICAL_TOL: f64 = 1e-9;

/// Schedule `δ_t = a·t^(−β)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeSpec {
    pub amplitude: f64,
    pub exponent: f64,
}

/// Limit behaviour of `tδ_t^d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Regime {
    Sparse,
    Thermodynamic { c: f64 },
    Dense,
}

impl RegimeSpec {
    pub fn new(amplitude: f64, exponent: f64) -> Result<Self> {
        if !(amplitude.is_finite() && amplitude > 0.0) {
            return Err(Error::param(format!("regime amplitude must be positive, got {amplitude}")));
        }
        if !(exponent.is_finite() && exponent > 0.0) {
            return Err(Error::param(format!("regime exponent must be positive, got {exponent}")));
        }
        Ok(RegimeSpec { amplitude, exponent })
    }

    /// The thermodynamic schedule `δ_t = c^{1/d} t^{−1/d}`.
    pub fn thermodynamic(c: f64, d: usize) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::param(format!("thermodynamic constant must be positive, got {c}")));
        }
        Self::new(c.powf(1.0 / d as f64), 1.0 / d as f64)
    }

    pub fn delta(&self, t: f64) -> f64 {
        self.amplitude * t.powf(-self.exponent)
    }

    pub fn classify(&self, d: usize) -> Regime {
        let critical = 1.0 / d as f64;
        if (self.exponent - critical).abs() <= CRITICAL_TOL * critical {
            Regime::Thermodynamic { c: self.amplitude.powi(d as i32) }
        } else if self.exponent > critical {
            Regime::Sparse
        } else {
            Regime::Dense
        }
    }
}

impl FromStr for RegimeSpec {
    type Err = Error;

    /// Parses `a,beta`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::param(format!("regime `{s}`: expected `a,beta` with positive reals"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let a: f64 = a.trim().parse().map_err(|_| bad())?;
        let b: f64 = b.trim().parse().map_err(|_| bad())?;
        RegimeSpec::new(a, b)
    }
}

impl fmt::Display for RegimeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.amplitude, self.exponent)
    }
}

impl Regime {
    /// Regime suggested by a single `(t, δ)` pair: thermodynamic with
    /// `c = tδ^d`. Useful when no schedule is given.
    pub fn at(t: f64, delta: f64, d: usize) -> Regime {
        Regime::Thermodynamic { c: t * delta.powi(d as i32) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        let r: RegimeSpec = "1,0.5".parse().unwrap();
        assert_eq!(r.classify(2), Regime::Thermodynamic { c: 1.0 });
        assert_eq!(RegimeSpec::new(2.0, 0.5).unwrap().classify(2), Regime::Thermodynamic { c: 4.0 });
        assert_eq!(RegimeSpec::new(1.0, 0.75).unwrap().classify(2), Regime::Sparse);
        assert_eq!(RegimeSpec::new(1.0, 0.25).unwrap().classify(2), Regime::Dense);
        assert_eq!(RegimeSpec::new(1.0, 1.0 / 3.0).unwrap().classify(3), Regime::Thermodynamic { c: 1.0 });
    }

    #[test]
    fn schedule() {
        let r = RegimeSpec::thermodynamic(50.0, 2).unwrap();
        let t = 5000.0;
        assert!((t * r.delta(t).powi(2) - 50.0).abs() < 1e-9);
        assert_eq!(r.to_string().parse::<RegimeSpec>().unwrap(), r);
    }

    #[test]
    fn parse_errors() {
        for s in ["", "1", "1,", "a,b", "-1,0.5", "1,0", "1,inf", "1,2,3"] {
            assert!(s.parse::<RegimeSpec>().is_err(), "{s}");
        }
    }
}
