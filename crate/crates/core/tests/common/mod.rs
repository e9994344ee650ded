//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use volpow::complex::{ComplexKind, FaceStream};
use volpow::geometry::PointCloud;

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// All `size`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, size: usize) -> Vec<Vec<u32>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < left {
                break;
            }
            cur.push(i as u32);
            rec(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Circumcentre of `pts` inside their affine hull, `None` when degenerate.
fn circumcenter(pts: &[&[f64]]) -> Option<Vec<f64>> {
    let p0 = pts[0];
    let m = pts.len() - 1;
    if m == 0 {
        return Some(p0.to_vec());
    }
    let e: Vec<Vec<f64>> = pts[1..].iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let g = DMatrix::from_fn(m, m, |i, j| dot(&e[i], &e[j]));
    let rhs = DVector::from_fn(m, |i, _| 0.5 * dot(&e[i], &e[i]));
    let lambda = g.lu().solve(&rhs)?;
    let mut c = p0.to_vec();
    for (i, ei) in e.iter().enumerate() {
        for (cj, x) in c.iter_mut().zip(ei) {
            *cj += lambda[i] * x;
        }
    }
    Some(c)
}

/// Smallest enclosing ball radius by exhausting every support set of at most
/// `d + 1` points.
pub fn brute_miniball_radius(pts: &[&[f64]]) -> f64 {
    let d = pts[0].len();
    let mut best = f64::INFINITY;
    for size in 1..=pts.len().min(d + 1) {
        for s in subsets(pts.len(), size) {
            let support: Vec<&[f64]> = s.iter().map(|&i| pts[i as usize]).collect();
            let Some(c) = circumcenter(&support) else { continue };
            let r = dist(&c, support[0]);
            if r < best && pts.iter().all(|p| dist(&c, p) <= r * (1.0 + 1e-12) + 1e-15) {
                best = r;
            }
        }
    }
    best
}

/// Faces of dimension `0..=k_max` found by testing every vertex subset.
pub fn brute_faces(cloud: &PointCloud, delta: f64, kind: ComplexKind, k_max: usize) -> Vec<Vec<Vec<u32>>> {
    (0..=k_max)
        .map(|k| {
            subsets(cloud.len(), k + 1)
                .into_iter()
                .filter(|s| {
                    let pts: Vec<&[f64]> = s.iter().map(|&i| cloud.point(i as usize)).collect();
                    match kind {
                        ComplexKind::Rips => {
                            (0..pts.len()).all(|i| (i + 1..pts.len()).all(|j| dist(pts[i], pts[j]) <= delta))
                        }
                        ComplexKind::Cech => brute_miniball_radius(&pts) <= delta / 2.0,
                    }
                })
                .collect()
        })
        .collect()
}

pub fn stream_faces(s: &FaceStream) -> Vec<Vec<u32>> {
    let mut v: Vec<Vec<u32>> = s.faces().map(<[u32]>::to_vec).collect();
    v.sort();
    v
}

/// `k`-volume from pairwise squared distances (Cayley-Menger determinant).
pub fn cayley_menger_volume(pts: &[&[f64]]) -> f64 {
    let n = pts.len();
    let k = n - 1;
    let mut m = DMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        m[(0, i + 1)] = 1.0;
        m[(i + 1, 0)] = 1.0;
        for j in 0..n {
            m[(i + 1, j + 1)] = dist(pts[i], pts[j]).powi(2);
        }
    }
    let det = m.determinant();
    let fact: f64 = (1..=k).map(|x| x as f64).product();
    let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
    let v2 = sign * det / (2f64.powi(k as i32) * fact * fact);
    v2.max(0.0).sqrt()
}

/// Point `i` of the Halton sequence in `[0,1)^dim` (bases are the first
/// `dim` primes).
pub fn halton(i: u64, dim: usize) -> Vec<f64> {
    const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    (0..dim)
        .map(|c| {
            let b = PRIMES[c];
            let (mut f, mut r, mut n) = (1.0, 0.0, i + 1);
            while n > 0 {
                f /= b as f64;
                r += f * (n % b) as f64;
                n /= b;
            }
            r
        })
        .collect()
}

/// Quasi-Monte Carlo integral over `(B^d)^k` of `f`, via the cube
/// `[-1,1]^{dk}` with the ball constraint folded into the integrand.
pub fn qmc_ball_integral(k: usize, d: usize, n: u64, f: impl Fn(&[Vec<f64>]) -> f64) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        let u = halton(i, k * d);
        let pts: Vec<Vec<f64>> = u.chunks(d).map(|c| c.iter().map(|x| 2.0 * x - 1.0).collect()).collect();
        if pts.iter().all(|p| p.iter().map(|x| x * x).sum::<f64>() <= 1.0) {
            sum += f(&pts);
        }
    }
    sum / n as f64 * 2f64.powi((k * d) as i32)
}
