use super::small::{solve_in_place, Square};
use super::volume::dist2;
use crate::{Error, Result, MAX_DIM};

/// Relative slack for deciding whether a point is inside a candidate ball.
const MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    fn contains(&self, p: &[f64]) -> bool {
        self.radius >= 0.0 && dist2(&self.center, p).sqrt() <= self.radius * (1.0 + MEMBERSHIP_TOL)
    }
}

/// Smallest ball containing all `points` (Welzl's recursion over support
/// sets of at most `d+1` points).
pub fn min_enclosing_ball(points: &[&[f64]]) -> Result<Ball> {
    if points.is_empty() {
        return Err(Error::param("smallest enclosing ball of an empty set"));
    }
    let d = points[0].len();
    if d == 0 || d > MAX_DIM || points.iter().any(|p| p.len() != d) {
        return Err(Error::param("points must share a dimension in 1..=MAX_DIM"));
    }
    let mut support = Vec::with_capacity(d + 1);
    match welzl(points, points.len(), &mut support, d) {
        Some(b) => Ok(b),
        // Affinely dependent support sets have probability zero for
        // continuous inputs; hand-built inputs fall back to exhaustion.
        None => exhaustive(points, d),
    }
}

pub fn min_enclosing_ball_radius(points: &[&[f64]]) -> Result<f64> {
    if points.len() <= 2 {
        return match points {
            [] => Err(Error::param("smallest enclosing ball of an empty set")),
            [_] => Ok(0.0),
            [a, b] => Ok(0.5 * dist2(a, b).sqrt()),
            _ => unreachable!(),
        };
    }
    min_enclosing_ball(points).map(|b| b.radius)
}

fn welzl(points: &[&[f64]], n: usize, support: &mut Vec<usize>, d: usize) -> Option<Ball> {
    if n == 0 || support.len() == d + 1 {
        return circumball(points, support, d);
    }
    let ball = welzl(points, n - 1, support, d)?;
    if ball.contains(points[n - 1]) {
        return Some(ball);
    }
    support.push(n - 1);
    let out = welzl(points, n - 1, support, d);
    support.pop();
    out
}

/// Smallest ball with every support point on its boundary; `None` when the
/// support is affinely dependent.
fn circumball(points: &[&[f64]], support: &[usize], d: usize) -> Option<Ball> {
    let Some(&first) = support.first() else {
        return Some(Ball { center: vec![0.0; d], radius: -1.0 });
    };
    let p0 = points[first];
    let m = support.len() - 1;
    if m == 0 {
        return Some(Ball { center: p0.to_vec(), radius: 0.0 });
    }
    let mut v = [[0.0; MAX_DIM]; MAX_DIM];
    for (i, &s) in support[1..].iter().enumerate() {
        for c in 0..d {
            v[i][c] = points[s][c] - p0[c];
        }
    }
    let mut g: Square = [[0.0; MAX_DIM]; MAX_DIM];
    let mut rhs = [0.0; MAX_DIM];
    for i in 0..m {
        for j in 0..m {
            g[i][j] = (0..d).map(|c| v[i][c] * v[j][c]).sum();
        }
        rhs[i] = 0.5 * g[i][i];
    }
    if !solve_in_place(&mut g, &mut rhs, m, 1e-12) {
        return None;
    }
    let mut center = p0.to_vec();
    for i in 0..m {
        for c in 0..d {
            center[c] += rhs[i] * v[i][c];
        }
    }
    let radius = dist2(&center, p0).sqrt();
    Some(Ball { center, radius })
}

fn exhaustive(points: &[&[f64]], d: usize) -> Result<Ball> {
    let n = points.len();
    let mut best: Option<Ball> = None;
    let mut support = Vec::with_capacity(d + 1);
    // n is tiny (faces have at most k_max + 1 vertices).
    for mask in 1u64..(1u64 << n.min(63)) {
        if mask.count_ones() as usize > d + 1 {
            continue;
        }
        support.clear();
        support.extend((0..n).filter(|i| mask >> i & 1 == 1));
        if let Some(b) = circumball(points, &support, d) {
            if points.iter().all(|p| b.contains(p))
                && best.as_ref().is_none_or(|cur| b.radius < cur.radius)
            {
                best = Some(b);
            }
        }
    }
    best.ok_or_else(|| Error::Numerical("no enclosing ball found".into()))
}
