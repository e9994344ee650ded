use super::small::{det_in_place, Square};
use crate::{Error, Result, MAX_DIM};

/// Negative Gram determinants above this are round-off and clamp to zero.
const GRAM_CLAMP: f64 = -1e-12;

#[inline]
pub fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// `‖a − b‖ ≤ s`, compared on squares without tolerance. This is the one
/// edge predicate used throughout the crate.
#[inline]
pub fn within(a: &[f64], b: &[f64], s: f64) -> bool {
    dist2(a, b) <= s * s
}

/// True iff every pairwise distance is at most `s`.
pub fn diameter_le(points: &[&[f64]], s: f64) -> bool {
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            if !within(a, b, s) {
                return false;
            }
        }
    }
    true
}

pub fn diameter(points: &[&[f64]]) -> f64 {
    let mut best: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            best = best.max(dist2(a, b));
        }
    }
    best.sqrt()
}

/// `k`-dimensional volume of the convex hull of `k+1` points in `R^d`,
/// `sqrt(det G)/k!` with `G` the Gram matrix of edges rooted at the first
/// point.
pub fn simplex_volume(points: &[&[f64]]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::param(format!(
            "simplex volume needs at least 2 points, got {}",
            points.len()
        )));
    }
    let d = points[0].len();
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::param("points of mixed dimension"));
    }
    simplex_volume_of(points.len() - 1, d, |i| points[i])
}

/// Same as [`simplex_volume`] with points supplied by index.
pub fn simplex_volume_of<'a, F>(k: usize, d: usize, point: F) -> Result<f64>
where
    F: Fn(usize) -> &'a [f64],
{
    if k == 0 {
        return Err(Error::param("simplex volume needs k >= 1"));
    }
    if k > d {
        return Err(Error::Dimension { k, d });
    }
    if d > MAX_DIM {
        return Err(Error::param(format!("dimension {d} exceeds {MAX_DIM}")));
    }
    if k == 1 {
        return Ok(dist2(point(0), point(1)).sqrt());
    }
    let base = point(0);
    let mut edges = [[0.0; MAX_DIM]; MAX_DIM];
    for (i, e) in edges.iter_mut().enumerate().take(k) {
        let p = point(i + 1);
        for c in 0..d {
            e[c] = p[c] - base[c];
        }
    }
    let fact: f64 = (2..=k).map(|x| x as f64).product();
    if k == d {
        // square edge matrix: its determinant is far better conditioned
        // than the Gram determinant, which squares it
        let mut e: Square = edges;
        return Ok(det_in_place(&mut e, k).abs() / fact);
    }
    let mut gram: Square = [[0.0; MAX_DIM]; MAX_DIM];
    for i in 0..k {
        for j in i..k {
            let g: f64 = (0..d).map(|c| edges[i][c] * edges[j][c]).sum();
            gram[i][j] = g;
            gram[j][i] = g;
        }
    }
    let det = det_in_place(&mut gram, k);
    let det = if det < 0.0 {
        if det > GRAM_CLAMP {
            0.0
        } else {
            return Err(Error::Numerical(format!("Gram determinant {det:e} is negative")));
        }
    } else {
        det
    };
    Ok(det.sqrt() / fact)
}
