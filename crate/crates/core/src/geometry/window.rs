use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, MAX_DIM};

/// Volume `κ_d` of the `d`-dimensional unit ball.
pub fn unit_ball_volume(d: usize) -> f64 {
    // κ_0 = 1, κ_1 = 2, κ_d = κ_{d-2} · 2π/d
    let mut k = if d % 2 == 0 { 1.0 } else { 2.0 };
    let mut j = if d % 2 == 0 { 2 } else { 3 };
    while j <= d {
        k *= 2.0 * std::f64::consts::PI / j as f64;
        j += 2;
    }
    k
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    /// `[0,1]^d`.
    UnitCube,
    /// Ball of volume one centred at the origin.
    UnitVolumeBall,
}

/// Convex compact observation window of unit volume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    kind: WindowKind,
    dim: usize,
}

impl Window {
    pub fn new(kind: WindowKind, dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::param(format!(
                "window dimension must be in 1..={MAX_DIM}, got {dim}"
            )));
        }
        Ok(Self { kind, dim })
    }

    pub fn cube(dim: usize) -> Result<Self> {
        Self::new(WindowKind::UnitCube, dim)
    }

    pub fn ball(dim: usize) -> Result<Self> {
        Self::new(WindowKind::UnitVolumeBall, dim)
    }

    pub fn kind(&self) -> WindowKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn volume(&self) -> f64 {
        1.0
    }

    /// Radius of the unit-volume ball in this dimension, `κ_d^{-1/d}`.
    pub fn ball_radius(&self) -> f64 {
        unit_ball_volume(self.dim).powf(-1.0 / self.dim as f64)
    }

    /// Surface area `S(W)`.
    pub fn surface_area(&self) -> f64 {
        let d = self.dim as f64;
        match self.kind {
            WindowKind::UnitCube => 2.0 * d,
            WindowKind::UnitVolumeBall => {
                d * unit_ball_volume(self.dim) * self.ball_radius().powi(self.dim as i32 - 1)
            }
        }
    }

    pub fn diameter(&self) -> f64 {
        match self.kind {
            WindowKind::UnitCube => (self.dim as f64).sqrt(),
            WindowKind::UnitVolumeBall => 2.0 * self.ball_radius(),
        }
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        debug_assert_eq!(p.len(), self.dim);
        match self.kind {
            WindowKind::UnitCube => p.iter().all(|&x| (0.0..=1.0).contains(&x)),
            WindowKind::UnitVolumeBall => {
                let r = self.ball_radius();
                p.iter().map(|x| x * x).sum::<f64>() <= r * r
            }
        }
    }

    /// Exact volume of the inner parallel body `W_{-δ} = {x : B(x,δ) ⊂ W}`.
    pub fn inner_parallel_volume(&self, delta: f64) -> f64 {
        assert!(delta >= 0.0, "inner parallel distance must be non-negative");
        let d = self.dim as i32;
        match self.kind {
            WindowKind::UnitCube => (1.0 - 2.0 * delta).max(0.0).powi(d),
            WindowKind::UnitVolumeBall => {
                let r = self.ball_radius();
                ((r - delta).max(0.0) / r).powi(d)
            }
        }
    }

    /// Writes a uniform point of the window into `out`.
    pub(crate) fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        match self.kind {
            WindowKind::UnitCube => {
                for x in out.iter_mut() {
                    *x = rng.random::<f64>();
                }
            }
            WindowKind::UnitVolumeBall => {
                // Rejection from the bounding cube; acceptance κ_d / 2^d.
                let r = self.ball_radius();
                loop {
                    let mut n2 = 0.0;
                    for x in out.iter_mut() {
                        *x = r * (2.0 * rng.random::<f64>() - 1.0);
                        n2 += *x * *x;
                    }
                    if n2 <= r * r {
                        return;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_volumes() {
        let pi = std::f64::consts::PI;
        assert_eq!(unit_ball_volume(0), 1.0);
        assert_eq!(unit_ball_volume(1), 2.0);
        assert!((unit_ball_volume(2) - pi).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * pi / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume(4) - pi * pi / 2.0).abs() < 1e-14);
    }

    #[test]
    fn inner_parallel_examples() {
        let w = Window::cube(2).unwrap();
        assert_eq!(w.inner_parallel_volume(0.0), 1.0);
        assert!((w.inner_parallel_volume(0.1) - 0.64).abs() < 1e-15);
        assert_eq!(w.inner_parallel_volume(0.7), 0.0);
        let b = Window::ball(3).unwrap();
        assert!((b.inner_parallel_volume(0.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inner_parallel_dominates_surface_bound() {
        for kind in [WindowKind::UnitCube, WindowKind::UnitVolumeBall] {
            for d in 1..=6 {
                let w = Window::new(kind, d).unwrap();
                let s = w.surface_area();
                let mut prev = 1.0;
                for i in 0..=200 {
                    let delta = i as f64 * 0.005;
                    let v = w.inner_parallel_volume(delta);
                    assert!((0.0..=1.0).contains(&v));
                    assert!(v <= prev + 1e-15, "not monotone");
                    prev = v;
                    let bound = 1.0 - s * delta;
                    if v > 0.0 {
                        assert!(v >= bound - 1e-12, "{kind:?} d={d} δ={delta}: {v} < {bound}");
                    }
                }
            }
        }
    }

    #[test]
    fn ball_surface_area_matches_derivative_of_volume() {
        // S = d/dr (κ_d r^d) at the unit-volume radius.
        for d in 1..=6 {
            let w = Window::ball(d).unwrap();
            let r = w.ball_radius();
            let h = 1e-6;
            let k = unit_ball_volume(d);
            let fd = (k * (r + h).powi(d as i32) - k * (r - h).powi(d as i32)) / (2.0 * h);
            assert!((fd - w.surface_area()).abs() < 1e-6);
        }
    }

    #[test]
    fn rejects_bad_dimension() {
        assert!(Window::cube(0).is_err());
        assert!(Window::ball(MAX_DIM + 1).is_err());
    }
}
