use rand::Rng;
use rand_distr::{Distribution, Poisson};

use super::Window;
use crate::rng::stream_rng;
use crate::{Error, Result};

/// How a cloud was generated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Provenance {
    pub window: Window,
    pub intensity: f64,
    pub seed: u64,
}

/// An immutable point configuration in `R^d`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
    provenance: Option<Provenance>,
}

impl PointCloud {
    pub fn from_points<P: AsRef<[f64]>>(dim: usize, points: &[P]) -> Result<Self> {
        if dim == 0 || dim > crate::MAX_DIM {
            return Err(Error::param(format!("point dimension {dim} out of range")));
        }
        let mut coords = Vec::with_capacity(dim * points.len());
        for p in points {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(Error::param(format!(
                    "expected {dim} coordinates, got {}",
                    p.len()
                )));
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::param("non-finite coordinate"));
            }
            coords.extend_from_slice(p);
        }
        Ok(Self { dim, coords, provenance: None })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn seed(&self) -> Option<u64> {
        self.provenance.map(|p| p.seed)
    }

    /// Copy with every coordinate multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            coords: self.coords.iter().map(|x| x * s).collect(),
            provenance: None,
        }
    }
}

/// Samples a Poisson process of intensity `t` on `window` from stream 0 of
/// `seed`.
pub fn sample_poisson(window: &Window, t: f64, seed: u64) -> Result<PointCloud> {
    let mut rng = stream_rng(seed, 0);
    let mut cloud = sample_poisson_with(window, t, &mut rng)?;
    if let Some(p) = cloud.provenance.as_mut() {
        p.seed = seed;
    }
    Ok(cloud)
}

/// Samples from a caller-supplied generator; the recorded seed is 0.
pub fn sample_poisson_with<R: Rng + ?Sized>(window: &Window, t: f64, rng: &mut R) -> Result<PointCloud> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::param(format!("intensity must be positive and finite, got {t}")));
    }
    // vol(W) = 1
    let n = Poisson::new(t)
        .map_err(|e| Error::param(format!("poisson({t}): {e}")))?
        .sample(rng) as usize;
    let d = window.dim();
    let mut coords = vec![0.0; n * d];
    for p in coords.chunks_exact_mut(d) {
        window.sample_into(rng, p);
    }
    Ok(PointCloud {
        dim: d,
        coords,
        provenance: Some(Provenance { window: *window, intensity: t, seed: 0 }),
    })
}
