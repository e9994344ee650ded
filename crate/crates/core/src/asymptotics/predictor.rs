use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::complex::ComplexKind;
use crate::functionals::{AdmissibleSequence, FunctionalSpec};
use crate::moments::{mu_one, MomentKey, MomentTable};
use crate::{Error, Result};

/// A constant or prediction together with its propagated Monte Carlo error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate { value, std_error: 0.0 }
    }

    pub fn scale(self, s: f64) -> Self {
        Estimate { value: self.value * s, std_error: self.std_error * s.abs() }
    }

    /// Product of independent estimates, first-order error propagation.
    pub fn times(self, o: Estimate) -> Self {
        Estimate {
            value: self.value * o.value,
            std_error: (self.std_error * o.value).hypot(self.value * o.std_error),
        }
    }

    /// Sum of independent estimates.
    pub fn plus(self, o: Estimate) -> Self {
        Estimate { value: self.value + o.value, std_error: self.std_error.hypot(o.std_error) }
    }
}

pub(crate) fn factorial(n: usize) -> f64 {
    (2..=n).map(|x| x as f64).product()
}

/// One `m`-term of a covariance prediction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovarianceTerm {
    pub m: usize,
    pub value: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CovariancePrediction {
    pub specs: Vec<FunctionalSpec>,
    pub t: f64,
    pub delta: f64,
    pub matrix: DMatrix<f64>,
    pub std_errors: DMatrix<f64>,
    /// Row-major `n×n` list of per-`m` terms.
    pub terms: Vec<Vec<CovarianceTerm>>,
}

impl CovariancePrediction {
    pub fn terms_of(&self, i: usize, j: usize) -> &[CovarianceTerm] {
        &self.terms[i * self.specs.len() + j]
    }
}

/// Evaluates the leading-order formulas from a table of constants, using
/// `μ` (Rips) or `ν` (Čech) constants. Constants with closed forms are
/// never looked up:
///
/// * `μ_0 = 1` and `μ_1^(α) = dκ_d/(α+d)`;
/// * `μ_{0,k:1}^{(α1,α2)} = μ_k^{(α2)}`;
/// * `μ_{k1,k2:1} = μ_{k1}·μ_{k2}` (the simplices share only the origin);
/// * `μ_{k,k:k+1}^{(α1,α2)} = μ_k^{(α1+α2)}` (the simplices coincide).
#[derive(Debug, Clone, Copy)]
pub struct Predictor<'a> {
    table: &'a MomentTable,
    kind: ComplexKind,
    dim: usize,
}

impl<'a> Predictor<'a> {
    pub fn new(table: &'a MomentTable, kind: ComplexKind, dim: usize) -> Self {
        Predictor { table, kind, dim }
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn cech(&self) -> bool {
        self.kind == ComplexKind::Cech
    }

    fn lookup(&self, key: MomentKey) -> Result<Estimate> {
        self.table
            .get(&key)
            .map(|e| Estimate { value: e.value, std_error: e.std_error })
            .ok_or_else(|| Error::TableMiss(key.to_string()))
    }

    /// `μ_k^(α)` or `ν_k^(α)`.
    pub fn single(&self, k: usize, alpha: f64) -> Result<Estimate> {
        match k {
            0 => Ok(Estimate::exact(1.0)),
            1 => Ok(Estimate::exact(mu_one(alpha, self.dim))),
            _ if self.cech() => self.lookup(MomentKey::nu(k, alpha, self.dim)),
            _ => self.lookup(MomentKey::mu(k, alpha, self.dim)),
        }
    }

    /// `μ_{k1,k2:m}^{(α1,α2)}` or its Čech analogue.
    pub fn mixed(&self, k1: usize, k2: usize, m: usize, a1: f64, a2: f64) -> Result<Estimate> {
        if m < 1 || m > k1.min(k2) + 1 {
            return Err(Error::param(format!("m = {m} outside 1..={}", k1.min(k2) + 1)));
        }
        if k1 == 0 {
            return self.single(k2, a2);
        }
        if k2 == 0 {
            return self.single(k1, a1);
        }
        if m == 1 {
            return Ok(self.single(k1, a1)?.times(self.single(k2, a2)?));
        }
        if k1 == k2 && m == k1 + 1 {
            return self.single(k1, a1 + a2);
        }
        self.lookup(MomentKey::mixed(self.cech(), k1, k2, m, a1, a2, self.dim))
    }

    /// Table keys the predictions for `seq` will consult.
    pub fn required_keys(&self, seq: &AdmissibleSequence) -> Vec<MomentKey> {
        let mut keys: Vec<MomentKey> = Vec::new();
        let mut add = |k: MomentKey| {
            if !keys.contains(&k) {
                keys.push(k);
            }
        };
        let single = |k: usize, a: f64| {
            if self.cech() {
                MomentKey::nu(k, a, self.dim)
            } else {
                MomentKey::mu(k, a, self.dim)
            }
        };
        let specs = seq.specs();
        for (i, s) in specs.iter().enumerate() {
            if s.k >= 2 {
                add(single(s.k, s.alpha));
            }
            for r in &specs[i..] {
                for m in 1..=s.k.min(r.k) + 1 {
                    let (k1, k2) = (s.k, r.k);
                    if k1 == 0 || k2 == 0 {
                        continue;
                    }
                    if m == 1 {
                        continue;
                    }
                    if k1 == k2 && m == k1 + 1 {
                        if k1 >= 2 {
                            add(single(k1, s.alpha + r.alpha));
                        }
                        continue;
                    }
                    add(MomentKey::mixed(self.cech(), k1, k2, m, s.alpha, r.alpha, self.dim));
                }
            }
        }
        keys
    }

    /// Leading term `μ_k^(α)/(k+1)!·t^{k+1}·δ^{k(α+d)}` of `E V_k^(α)`.
    pub fn expected_functional(&self, t: f64, delta: f64, spec: FunctionalSpec) -> Result<Estimate> {
        check_scales(t, delta)?;
        let d = self.dim as f64;
        let (k, a) = (spec.k as f64, spec.alpha);
        let w = t.powf(k + 1.0) * delta.powf(k * (a + d)) / factorial(spec.k + 1);
        Ok(self.single(spec.k, a)?.scale(w))
    }

    /// The `m`-terms of `Cov(V_{k1}^{(α1)}, V_{k2}^{(α2)})`, `m = 1..=min k + 1`.
    pub fn covariance_terms(
        &self,
        t: f64,
        delta: f64,
        s1: FunctionalSpec,
        s2: FunctionalSpec,
    ) -> Result<Vec<CovarianceTerm>> {
        check_scales(t, delta)?;
        let d = self.dim as f64;
        let (k1, k2) = (s1.k, s2.k);
        (1..=k1.min(k2) + 1)
            .map(|m| {
                let c = self.mixed(k1, k2, m, s1.alpha, s2.alpha)?;
                let mf = m as f64;
                let t_pow = (k1 + k2) as f64 - mf + 2.0;
                let d_pow = (d + s1.alpha) * k1 as f64 + (d + s2.alpha) * k2 as f64 - d * (mf - 1.0);
                let w = t.powf(t_pow) * delta.powf(d_pow)
                    / (factorial(m) * factorial(k1 + 1 - m) * factorial(k2 + 1 - m));
                let e = c.scale(w);
                Ok(CovarianceTerm { m, value: e.value, std_error: e.std_error })
            })
            .collect()
    }

    pub fn covariance(&self, t: f64, delta: f64, s1: FunctionalSpec, s2: FunctionalSpec) -> Result<Estimate> {
        Ok(self
            .covariance_terms(t, delta, s1, s2)?
            .iter()
            .fold(Estimate::exact(0.0), |acc, c| acc.plus(Estimate { value: c.value, std_error: c.std_error })))
    }

    /// Full covariance matrix of the functionals in `seq`.
    pub fn covariance_prediction(&self, t: f64, delta: f64, seq: &AdmissibleSequence) -> Result<CovariancePrediction> {
        let specs = seq.specs().to_vec();
        let n = specs.len();
        let mut matrix = DMatrix::zeros(n, n);
        let mut std_errors = DMatrix::zeros(n, n);
        let mut terms = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in i..n {
                let ts = self.covariance_terms(t, delta, specs[i], specs[j])?;
                let e = ts
                    .iter()
                    .fold(Estimate::exact(0.0), |acc, c| acc.plus(Estimate { value: c.value, std_error: c.std_error }));
                matrix[(i, j)] = e.value;
                matrix[(j, i)] = e.value;
                std_errors[(i, j)] = e.std_error;
                std_errors[(j, i)] = e.std_error;
                terms[i * n + j] = ts.clone();
                terms[j * n + i] = ts;
            }
        }
        Ok(CovariancePrediction { specs, t, delta, matrix, std_errors, terms })
    }
}

fn check_scales(t: f64, delta: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0 && delta.is_finite() && delta > 0.0) {
        return Err(Error::param(format!("t and delta must be positive, got t={t}, delta={delta}")));
    }
    Ok(())
}

/// `Q = t^{1/2}·δ^{αk}·max{(tδ^d)^k, (tδ^d)^{k/2}}`.
pub fn normalizer_q(t: f64, delta: f64, k: usize, alpha: f64, d: usize) -> f64 {
    let s = t * delta.powi(d as i32);
    let k = k as f64;
    t.sqrt() * delta.powf(alpha * k) * s.powf(k).max(s.powf(k / 2.0))
}

/// Shape `t^{−1/2}·max{(tδ^d)^{−k/2}, 1}` of the Kolmogorov-distance bound,
/// without its unknown constant. For a sequence pass its largest `k`.
pub fn clt_rate_bound(t: f64, delta: f64, k: usize, d: usize) -> f64 {
    let s = t * delta.powi(d as i32);
    t.powf(-0.5) * s.powf(-(k as f64) / 2.0).max(1.0)
}
