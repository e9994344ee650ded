use nalgebra::DMatrix;

use crate::{Error, Result};

/// Empirical generalized moment matrix `M_X(c)_{ij} = E X^{c_i + c_j}` with
/// the standard error of every entry.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentMatrix {
    exponents: Vec<f64>,
    entries: DMatrix<f64>,
    std_errors: DMatrix<f64>,
}

/// Builds the moment matrix of `samples` for exponents `c`.
pub fn moment_matrix(samples: &[f64], c: &[f64]) -> Result<MomentMatrix> {
    if samples.is_empty() || c.is_empty() {
        return Err(Error::param("moment matrix needs samples and exponents"));
    }
    let n = c.len();
    let mut entries = DMatrix::zeros(n, n);
    let mut std_errors = DMatrix::zeros(n, n);
    let len = samples.len() as f64;
    for i in 0..n {
        for j in i..n {
            let p = c[i] + c[j];
            let integral = p.fract() == 0.0;
            let (mut s, mut s2) = (0.0, 0.0);
            for &x in samples {
                if x < 0.0 && !integral {
                    return Err(Error::Domain(format!("negative sample {x} raised to non-integer power {p}")));
                }
                let v = if p == 0.0 { 1.0 } else { x.powf(p) };
                if !v.is_finite() {
                    return Err(Error::Domain(format!("{x}^{p} is not finite")));
                }
                s += v;
                s2 += v * v;
            }
            let mean = s / len;
            let var = if samples.len() > 1 { ((s2 - s * mean) / (len - 1.0)).max(0.0) } else { 0.0 };
            entries[(i, j)] = mean;
            entries[(j, i)] = mean;
            let se = (var / len).sqrt();
            std_errors[(i, j)] = se;
            std_errors[(j, i)] = se;
        }
    }
    Ok(MomentMatrix { exponents: c.to_vec(), entries, std_errors })
}

impl MomentMatrix {
    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn std_errors(&self) -> &DMatrix<f64> {
        &self.std_errors
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.entries.clone().symmetric_eigenvalues().min()
    }

    pub fn is_psd(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol * self.entries.trace()
    }

    /// Number of singular values above `threshold`.
    pub fn rank_above(&self, threshold: f64) -> usize {
        self.entries.singular_values().iter().filter(|&&s| s > threshold).count()
    }

    /// Rank for exact inputs: threshold `σ_max·n·1e-12`.
    pub fn rank(&self) -> usize {
        let sv = self.entries.singular_values();
        self.rank_above(sv.max() * self.exponents.len() as f64 * 1e-12)
    }

    /// Rank for Monte Carlo inputs: singular values must clear three times
    /// the Frobenius norm of the entry errors, which bounds how far noise
    /// can move any singular value.
    pub fn mc_rank(&self) -> usize {
        self.rank_above(3.0 * self.std_errors.norm())
    }
}
