use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::mc::{integrate, unit_ball_point};
use crate::functionals::FunctionalSpec;
use crate::geometry::{dist2, min_enclosing_ball_radius, simplex_volume_of, unit_ball_volume};
use crate::rng::StreamRng;
use crate::{Error, Result, MAX_DIM};

/// Default sample count for constants that feed acceptance checks.
pub const DEFAULT_SAMPLES: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentKind {
    Mu,
    MuMixed,
    Nu,
    NuMixed,
    #[serde(rename = "mu_10_jk")]
    Mu10,
}

impl MomentKind {
    pub fn name(self) -> &'static str {
        match self {
            MomentKind::Mu => "mu",
            MomentKind::MuMixed => "mu_mixed",
            MomentKind::Nu => "nu",
            MomentKind::NuMixed => "nu_mixed",
            MomentKind::Mu10 => "mu_10_jk",
        }
    }

    fn index_arity(self) -> usize {
        match self {
            MomentKind::Mu | MomentKind::Nu => 1,
            MomentKind::Mu10 => 2,
            MomentKind::MuMixed | MomentKind::NuMixed => 3,
        }
    }

    fn alpha_arity(self) -> usize {
        match self {
            MomentKind::Mu | MomentKind::Nu => 1,
            MomentKind::Mu10 => 0,
            MomentKind::MuMixed | MomentKind::NuMixed => 2,
        }
    }
}

impl FromStr for MomentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [MomentKind::Mu, MomentKind::MuMixed, MomentKind::Nu, MomentKind::NuMixed, MomentKind::Mu10]
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::param(format!("unknown moment kind `{s}`")))
    }
}

/// Identifies one constant. Mixed keys are stored in canonical order
/// `(k1, α1) ≤ (k2, α2)`; the constant is symmetric under the swap.
#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub struct MomentKey {
    kind: MomentKind,
    dim: usize,
    indices: Vec<usize>,
    alphas: Vec<f64>,
}

/// `-0.0` and `0.0` must produce the same key.
fn clean(alpha: f64) -> f64 {
    alpha + 0.0
}

impl MomentKey {
    pub fn mu(k: usize, alpha: f64, dim: usize) -> Self {
        MomentKey { kind: MomentKind::Mu, dim, indices: vec![k], alphas: vec![clean(alpha)] }
    }

    pub fn nu(k: usize, alpha: f64, dim: usize) -> Self {
        MomentKey { kind: MomentKind::Nu, dim, indices: vec![k], alphas: vec![clean(alpha)] }
    }

    /// Mixed key, `cech` selecting the ν family.
    pub fn mixed(cech: bool, k1: usize, k2: usize, m: usize, a1: f64, a2: f64, dim: usize) -> Self {
        let ((k1, a1), (k2, a2)) = canonical_pair((k1, clean(a1)), (k2, clean(a2)));
        MomentKey {
            kind: if cech { MomentKind::NuMixed } else { MomentKind::MuMixed },
            dim,
            indices: vec![k1, k2, m],
            alphas: vec![a1, a2],
        }
    }

    pub fn mu_10(j: usize, k: usize, dim: usize) -> Self {
        MomentKey { kind: MomentKind::Mu10, dim, indices: vec![j, k], alphas: vec![] }
    }

    pub fn kind(&self) -> MomentKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }
}

fn canonical_pair(a: (usize, f64), b: (usize, f64)) -> ((usize, f64), (usize, f64)) {
    if (b.0, b.1) < (a.0, a.1) {
        (b, a)
    } else {
        (a, b)
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `kind/d/indices/alphas`, e.g. `mu_mixed/2/1,2,2/0,0`.
impl fmt::Display for MomentKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}/{}", self.kind.name(), self.dim, join(&self.indices), join(&self.alphas))
    }
}

impl FromStr for MomentKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::param(format!("moment key `{s}`: {what}"));
        let parts: Vec<&str> = s.split('/').collect();
        let [kind, dim, indices, alphas] = parts[..] else {
            return Err(bad("expected kind/d/indices/alphas"));
        };
        let kind: MomentKind = kind.parse()?;
        let dim: usize = dim.parse().map_err(|_| bad("bad dimension"))?;
        let split = |t: &str| -> Vec<String> {
            if t.is_empty() {
                Vec::new()
            } else {
                t.split(',').map(str::to_owned).collect()
            }
        };
        let indices: Vec<usize> = split(indices)
            .iter()
            .map(|x| x.parse().map_err(|_| bad("bad index")))
            .collect::<Result<_>>()?;
        let alphas: Vec<f64> = split(alphas)
            .iter()
            .map(|x| x.parse::<f64>().map_err(|_| bad("bad exponent")))
            .collect::<Result<_>>()?;
        if indices.len() != kind.index_arity() || alphas.len() != kind.alpha_arity() {
            return Err(bad("wrong number of indices or exponents"));
        }
        if alphas.iter().any(|a| !a.is_finite()) {
            return Err(bad("non-finite exponent"));
        }
        let key = match kind {
            MomentKind::Mu => MomentKey::mu(indices[0], alphas[0], dim),
            MomentKind::Nu => MomentKey::nu(indices[0], alphas[0], dim),
            MomentKind::Mu10 => MomentKey::mu_10(indices[0], indices[1], dim),
            MomentKind::MuMixed | MomentKind::NuMixed => MomentKey::mixed(
                kind == MomentKind::NuMixed,
                indices[0],
                indices[1],
                indices[2],
                alphas[0],
                alphas[1],
                dim,
            ),
        };
        if key.to_string() != s {
            return Err(bad("not in canonical form"));
        }
        Ok(key)
    }
}

impl Serialize for MomentKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MomentKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A Monte Carlo (or exact, with zero error) value of one constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub key: MomentKey,
    pub value: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: Option<u64>,
}

impl MomentEstimate {
    pub fn exact(key: MomentKey, value: f64) -> Self {
        MomentEstimate { key, value, std_error: 0.0, n_samples: 0, seed: None }
    }
}

/// `dκ_d/(α+d)`, the exact value of `μ_1^(α)` (and `ν_1^(α)`).
pub fn mu_one(alpha: f64, d: usize) -> f64 {
    d as f64 * unit_ball_volume(d) / (alpha + d as f64)
}

/// `(dκ_d/(α+d))^k`, an upper bound on `μ_k^(α)` for `α ≥ 0`.
pub fn mu_product_bound(k: usize, alpha: f64, d: usize) -> f64 {
    mu_one(alpha, d).powi(k as i32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Condition {
    Rips,
    Cech,
}

/// One simplex `[0, X_lo..X_hi)` of the integrand contributing
/// `1(condition)·λ^α` (or just `λ^α` when `condition` is `None`).
#[derive(Debug, Clone, Copy)]
struct Factor {
    lo: usize,
    hi: usize,
    alpha: f64,
    condition: Option<Condition>,
}

const ORIGIN: [f64; MAX_DIM] = [0.0; MAX_DIM];

fn satisfied(cond: Condition, pts: &[f64], lo: usize, hi: usize, d: usize) -> bool {
    let p = |i: usize| &pts[i * d..(i + 1) * d];
    match cond {
        Condition::Rips => (lo..hi).all(|i| {
            dist2(p(i), &ORIGIN[..d]) <= 1.0 && (i + 1..hi).all(|j| dist2(p(i), p(j)) <= 1.0)
        }),
        Condition::Cech => {
            let mut refs: Vec<&[f64]> = Vec::with_capacity(hi - lo + 1);
            refs.push(&ORIGIN[..d]);
            refs.extend((lo..hi).map(p));
            min_enclosing_ball_radius(&refs).is_ok_and(|r| r <= 0.5)
        }
    }
}

fn integrand(factors: &[Factor], n_points: usize, d: usize, rng: &mut StreamRng) -> f64 {
    let mut pts = [0.0; 4 * MAX_DIM * MAX_DIM];
    let pts = &mut pts[..n_points * d];
    for chunk in pts.chunks_exact_mut(d) {
        unit_ball_point(rng, chunk);
    }
    let mut value = 1.0;
    for f in factors {
        if let Some(c) = f.condition {
            if !satisfied(c, pts, f.lo, f.hi, d) {
                return 0.0;
            }
        }
    }
    for f in factors {
        if f.alpha == 0.0 {
            continue;
        }
        let k = f.hi - f.lo;
        let vol = match simplex_volume_of(k, d, |i| if i == 0 { &ORIGIN[..d] } else { &pts[(f.lo + i - 1) * d..(f.lo + i) * d] }) {
            Ok(v) => v,
            Err(_) => return f64::NAN,
        };
        value *= if vol > 0.0 {
            vol.powf(f.alpha)
        } else if f.alpha > 0.0 {
            0.0
        } else {
            return f64::INFINITY;
        };
    }
    value
}

fn run(key: MomentKey, factors: &[Factor], n_points: usize, n_samples: u64, seed: u64) -> Result<MomentEstimate> {
    if n_samples < 2 {
        return Err(Error::param("at least 2 samples are needed for a standard error"));
    }
    let d = key.dim;
    if n_points * d > 4 * MAX_DIM * MAX_DIM {
        return Err(Error::param(format!("{n_points} points in dimension {d} is too many")));
    }
    let acc = integrate(n_samples, seed, |rng| integrand(factors, n_points, d, rng));
    if !acc.mean.is_finite() {
        return Err(Error::Numerical(format!("{key}: non-finite Monte Carlo mean")));
    }
    let scale = unit_ball_volume(d).powi(n_points as i32);
    Ok(MomentEstimate {
        key,
        value: scale * acc.mean,
        std_error: scale * acc.std_error(),
        n_samples,
        seed: Some(seed),
    })
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 || d > MAX_DIM {
        return Err(Error::param(format!("dimension {d} outside 1..={MAX_DIM}")));
    }
    Ok(())
}

fn check_single(k: usize, alpha: f64, d: usize) -> Result<()> {
    check_dim(d)?;
    FunctionalSpec::new(k, alpha, d).map_err(|e| Error::param(e.to_string()))?;
    Ok(())
}

fn single(cond: Condition, k: usize, alpha: f64, d: usize, n: u64, seed: u64) -> Result<MomentEstimate> {
    check_single(k, alpha, d)?;
    let key = match cond {
        Condition::Rips => MomentKey::mu(k, alpha, d),
        Condition::Cech => MomentKey::nu(k, alpha, d),
    };
    if k == 0 {
        return Ok(MomentEstimate::exact(key, 1.0));
    }
    let f = [Factor { lo: 0, hi: k, alpha, condition: Some(cond) }];
    run(key, &f, k, n, seed)
}

/// `μ_k^(α) = κ_d^k E[Δ_1[0,X_1..X_k]^α]` with `X_i` uniform in the unit
/// ball and `Δ_1` the Rips indicator at scale 1 times the volume.
pub fn estimate_mu(k: usize, alpha: f64, d: usize, n_samples: u64, seed: u64) -> Result<MomentEstimate> {
    single(Condition::Rips, k, alpha, d, n_samples, seed)
}

/// Čech analogue of [`estimate_mu`]: the indicator asks for a smallest
/// enclosing ball of `{0, X_1..X_k}` of radius at most `1/2`.
pub fn estimate_nu(k: usize, alpha: f64, d: usize, n_samples: u64, seed: u64) -> Result<MomentEstimate> {
    single(Condition::Cech, k, alpha, d, n_samples, seed)
}

#[allow(clippy::too_many_arguments)]
fn mixed(
    cond: Condition,
    k1: usize,
    k2: usize,
    m: usize,
    a1: f64,
    a2: f64,
    d: usize,
    n: u64,
    seed: u64,
) -> Result<MomentEstimate> {
    check_single(k1, a1, d)?;
    check_single(k2, a2, d)?;
    if m < 1 || m > k1.min(k2) + 1 {
        return Err(Error::param(format!("m = {m} outside 1..={}", k1.min(k2) + 1)));
    }
    let (a1c, a2c) = (clean(a1), clean(a2));
    if a1c.min(a2c).min(a1c + a2c) <= -(d as f64) {
        return Err(Error::param(format!("min(a1, a2, a1 + a2) must exceed -{d}")));
    }
    let ((k1, a1), (k2, a2)) = canonical_pair((k1, a1c), (k2, a2c));
    let cech = cond == Condition::Cech;
    let key = MomentKey::mixed(cech, k1, k2, m, a1, a2, d);
    if k1 == 0 {
        let inner = single(cond, k2, a2, d, n, seed)?;
        return Ok(MomentEstimate { key, ..inner });
    }
    let f = [
        Factor { lo: 0, hi: k1, alpha: a1, condition: Some(cond) },
        Factor { lo: k1 + 1 - m, hi: k1 + k2 + 1 - m, alpha: a2, condition: Some(cond) },
    ];
    run(key, &f, k1 + k2 + 1 - m, n, seed)
}

/// `μ_{k1,k2:m}^{(α1,α2)}`: two simplices on `k1+k2+1-m` uniform points
/// sharing the origin and `m-1` further points.
#[allow(clippy::too_many_arguments)]
pub fn estimate_mu_mixed(
    k1: usize,
    k2: usize,
    m: usize,
    alpha1: f64,
    alpha2: f64,
    d: usize,
    n_samples: u64,
    seed: u64,
) -> Result<MomentEstimate> {
    mixed(Condition::Rips, k1, k2, m, alpha1, alpha2, d, n_samples, seed)
}

#[allow(clippy::too_many_arguments)]
pub fn estimate_nu_mixed(
    k1: usize,
    k2: usize,
    m: usize,
    alpha1: f64,
    alpha2: f64,
    d: usize,
    n_samples: u64,
    seed: u64,
) -> Result<MomentEstimate> {
    mixed(Condition::Cech, k1, k2, m, alpha1, alpha2, d, n_samples, seed)
}

/// `∫ Δ_1[0,x_1..x_j] · 1(Rips[0,x_1..x_k])` over `(B^d)^k`: the mean
/// `j`-volume of a `j`-face of the typical `k`-simplex, unnormalized.
pub fn estimate_mu_10(j: usize, k: usize, d: usize, n_samples: u64, seed: u64) -> Result<MomentEstimate> {
    check_dim(d)?;
    if !(1 <= j && j < k && k <= d) {
        return Err(Error::param(format!("need 1 <= j < k <= d, got j={j}, k={k}, d={d}")));
    }
    let f = [
        Factor { lo: 0, hi: j, alpha: 1.0, condition: None },
        Factor { lo: 0, hi: k, alpha: 0.0, condition: Some(Condition::Rips) },
    ];
    run(MomentKey::mu_10(j, k, d), &f, k, n_samples, seed)
}

/// Volumes of `n` simplices `[0, X_1..X_k]` drawn conditionally on the Rips
/// (or Čech) condition, i.e. from the law whose moments the `μ_k^(α)/μ_k^(0)`
/// describe.
pub fn sample_simplex_volumes(k: usize, d: usize, cech: bool, n: usize, seed: u64) -> Result<Vec<f64>> {
    check_dim(d)?;
    if k == 0 || k > d {
        return Err(Error::param(format!("need 1 <= k <= d, got k={k}, d={d}")));
    }
    let cond = if cech { Condition::Cech } else { Condition::Rips };
    let mut rng = crate::rng::stream_rng(seed, 0);
    let mut pts = vec![0.0; k * d];
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        for chunk in pts.chunks_exact_mut(d) {
            unit_ball_point(&mut rng, chunk);
        }
        if satisfied(cond, &pts, 0, k, d) {
            out.push(simplex_volume_of(k, d, |i| if i == 0 { &ORIGIN[..d] } else { &pts[(i - 1) * d..i * d] })?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: u64 = 200_000;

    fn close(e: &MomentEstimate, exact: f64) {
        assert!(
            (e.value - exact).abs() <= 3.0 * e.std_error + 1e-12,
            "{}: {} ± {} vs {exact}",
            e.key,
            e.value,
            e.std_error
        );
    }

    #[test]
    fn trivial_values() {
        let e = estimate_mu(0, 1.5, 2, N, 1).unwrap();
        assert_eq!((e.value, e.std_error), (1.0, 0.0));
        for d in 1..=3 {
            let e = estimate_mu(1, 0.0, d, N, 2).unwrap();
            assert!((e.value - unit_ball_volume(d)).abs() < 1e-12);
            assert!(e.std_error < 1e-12);
            let e = estimate_nu(1, 0.0, d, N, 2).unwrap();
            assert!((e.value - unit_ball_volume(d)).abs() < 1e-12);
        }
    }

    #[test]
    fn analytic_d1() {
        close(&estimate_mu(2, 0.0, 1, N, 3).unwrap(), 3.0);
        close(&estimate_mu(1, 1.0, 1, N, 4).unwrap(), 1.0);
        close(&estimate_mu(1, 2.0, 3, N, 4).unwrap(), mu_one(2.0, 3));
    }

    #[test]
    fn inadmissible() {
        assert!(matches!(estimate_mu(3, 1.0, 2, N, 1), Err(Error::Parameter(_))));
        assert!(matches!(estimate_mu(1, -2.0, 2, N, 1), Err(Error::Parameter(_))));
        assert!(estimate_mu_mixed(1, 1, 3, 0.0, 0.0, 2, N, 1).is_err());
        assert!(estimate_mu_mixed(1, 1, 0, 0.0, 0.0, 2, N, 1).is_err());
        assert!(estimate_mu_mixed(1, 1, 1, -1.5, 1.0, 2, N, 1).is_ok());
        assert!(estimate_mu_mixed(1, 1, 1, -1.0, -1.0, 2, N, 1).is_err());
        assert!(estimate_mu_10(2, 2, 2, N, 1).is_err());
        assert!(estimate_mu_10(1, 3, 2, N, 1).is_err());
        assert!(estimate_mu(1, 0.0, 0, N, 1).is_err());
    }

    #[test]
    fn mixed_symmetry_and_reductions() {
        let a = estimate_mu_mixed(1, 2, 2, 1.0, 0.0, 2, 50_000, 9).unwrap();
        let b = estimate_mu_mixed(2, 1, 2, 0.0, 1.0, 2, 50_000, 9).unwrap();
        assert_eq!(a, b);
        let z = estimate_mu_mixed(0, 2, 1, 0.0, 0.0, 1, N, 5).unwrap();
        let mu = estimate_mu(2, 0.0, 1, N, 5).unwrap();
        assert_eq!(z.value, mu.value);
        assert_eq!(z.key, MomentKey::mixed(false, 2, 0, 1, 0.0, 0.0, 1));
        close(&estimate_mu_mixed(1, 1, 1, 0.0, 0.0, 1, N, 6).unwrap(), 4.0);
        // coincident simplices: both share every vertex
        close(&estimate_mu_mixed(1, 1, 2, 0.0, 0.0, 1, N, 6).unwrap(), 2.0);
        close(&estimate_mu_mixed(1, 1, 2, 1.0, 1.0, 1, N, 6).unwrap(), mu_one(2.0, 1));
    }

    #[test]
    fn key_round_trip() {
        let keys = [
            MomentKey::mu(2, 0.5, 3),
            MomentKey::nu(1, -0.25, 2),
            MomentKey::mixed(true, 2, 1, 2, 1.0, 0.0, 2),
            MomentKey::mu_10(1, 2, 2),
            MomentKey::mu(1, -0.0, 1),
        ];
        for k in keys {
            let s = k.to_string();
            assert_eq!(s.parse::<MomentKey>().unwrap(), k, "{s}");
        }
        assert_eq!(MomentKey::mixed(false, 2, 1, 2, 1.0, 0.0, 2).to_string(), "mu_mixed/2/1,2,2/0,1");
        assert!("mu_mixed/2/2,1,2/1,0".parse::<MomentKey>().is_err());
        assert!("mu/2/1".parse::<MomentKey>().is_err());
        assert!("mu/2/1/NaN".parse::<MomentKey>().is_err());
    }

    #[test]
    fn conditional_volumes() {
        let v = sample_simplex_volumes(2, 2, false, 2000, 1).unwrap();
        assert_eq!(v.len(), 2000);
        // the triangle fits in a unit-diameter set: area ≤ √3/4
        assert!(v.iter().all(|&x| (0.0..=3f64.sqrt() / 4.0 + 1e-12).contains(&x)));
    }
}
