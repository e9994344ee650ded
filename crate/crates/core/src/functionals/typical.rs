use super::volume_power;
use crate::complex::FaceStream;
use crate::geometry::{simplex_volume_of, PointCloud};
use crate::{Error, Result};

/// `V_k^(α) / f_k`, the empirical `α`-moment of the typical `k`-simplex.
pub fn typical_moment_estimate(stream: &FaceStream, alpha: f64) -> Result<f64> {
    if stream.is_empty() {
        return Err(Error::UndefinedEstimate(format!("no {}-faces", stream.k())));
    }
    let r = volume_power(stream, alpha)?;
    Ok(r.value / r.face_count as f64)
}

/// Mean over the faces of `stream` of the total `j`-volume of their
/// `j`-dimensional sub-faces.
pub fn typical_jface_volume(stream: &FaceStream, cloud: &PointCloud, j: usize) -> Result<f64> {
    let k = stream.k();
    let d = cloud.dim();
    if !(1 <= j && j < k && k <= d) {
        return Err(Error::param(format!("need 1 <= j < k <= d, got j={j}, k={k}, d={d}")));
    }
    if stream.is_empty() {
        return Err(Error::UndefinedEstimate(format!("no {k}-faces")));
    }
    let mut total = 0.0;
    let mut idx: Vec<usize> = Vec::with_capacity(j + 1);
    for face in stream.faces() {
        // (j+1)-subsets of the k+1 vertices in lexicographic order
        idx.clear();
        idx.extend(0..=j);
        loop {
            total += simplex_volume_of(j, d, |i| cloud.point(face[idx[i]] as usize))?;
            let mut pos = j as isize;
            while pos >= 0 && idx[pos as usize] == k - j + pos as usize {
                pos -= 1;
            }
            if pos < 0 {
                break;
            }
            let p = pos as usize;
            idx[p] += 1;
            for q in p + 1..=j {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    Ok(total / stream.len() as f64)
}
