use serde::{Deserialize, Serialize};

use super::{AdmissibleSequence, FunctionalSpec};
use crate::complex::{walk_faces, ComplexKind, FaceStream, NeighborGraph, WalkPlan};
use crate::geometry::{simplex_volume_of, PointCloud};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionalResult {
    pub spec: FunctionalSpec,
    pub value: f64,
    pub face_count: u64,
}

/// `λ^α` with `0^0 = 1`; a zero volume under a negative power is an error.
#[inline]
fn power(volume: f64, k: usize, alpha: f64) -> Result<f64> {
    if alpha == 0.0 {
        Ok(1.0)
    } else if volume > 0.0 {
        Ok(volume.powf(alpha))
    } else if alpha > 0.0 {
        Ok(0.0)
    } else {
        Err(Error::DegenerateFace { k, alpha })
    }
}

/// `Σ_{F ∈ stream} λ_k(F)^α`. For `α = 0` this is the face count and no
/// volume is touched; otherwise the stream must carry cached volumes.
pub fn volume_power(stream: &FaceStream, alpha: f64) -> Result<FunctionalResult> {
    let k = stream.k();
    let spec = FunctionalSpec { k, alpha };
    let face_count = stream.len() as u64;
    if alpha == 0.0 || k == 0 {
        return Ok(FunctionalResult { spec, value: face_count as f64, face_count });
    }
    if !alpha.is_finite() {
        return Err(Error::param(format!("alpha must be finite, got {alpha}")));
    }
    let vols = stream
        .volumes()
        .ok_or_else(|| Error::param(format!("volumes of the {k}-stream were not computed")))?;
    let mut value = 0.0;
    for &v in vols {
        value += power(v, k, alpha)?;
    }
    Ok(FunctionalResult { spec, value, face_count })
}

/// Evaluates every spec of `seq` in a single enumeration pass.
pub fn evaluate_sequence(
    cloud: &PointCloud,
    delta: f64,
    seq: &AdmissibleSequence,
    kind: ComplexKind,
) -> Result<Vec<FunctionalResult>> {
    let graph = NeighborGraph::build(cloud, delta)?;
    evaluate_sequence_on(cloud, &graph, seq, kind)
}

/// As [`evaluate_sequence`] on a prebuilt graph.
pub fn evaluate_sequence_on(
    cloud: &PointCloud,
    graph: &NeighborGraph,
    seq: &AdmissibleSequence,
    kind: ComplexKind,
) -> Result<Vec<FunctionalResult>> {
    let d = cloud.dim();
    if seq.dim() != d {
        return Err(Error::param(format!(
            "sequence built for d = {} evaluated on a d = {d} cloud",
            seq.dim()
        )));
    }
    let specs = seq.specs();
    let k_max = seq.k_max();
    // per face dimension: indices of specs needing volumes
    let mut by_k: Vec<Vec<usize>> = vec![Vec::new(); k_max + 1];
    let mut plan = WalkPlan::count_only(k_max);
    for (i, s) in specs.iter().enumerate() {
        if s.alpha != 0.0 && s.k >= 1 {
            by_k[s.k].push(i);
            plan = plan.with_visit(s.k);
        }
    }
    let mut sums = vec![0.0; specs.len()];
    let mut failure: Option<Error> = None;
    let counts = walk_faces(cloud, graph, kind, &plan, |face| {
        if failure.is_some() {
            return;
        }
        let k = face.len() - 1;
        let vol = match simplex_volume_of(k, d, |i| cloud.point(face[i] as usize)) {
            Ok(v) => v,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        for &i in &by_k[k] {
            match power(vol, k, specs[i].alpha) {
                Ok(p) => sums[i] += p,
                Err(e) => {
                    failure = Some(e);
                    return;
                }
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(specs
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let face_count = counts[s.k];
            let value = if s.alpha == 0.0 || s.k == 0 { face_count as f64 } else { sums[i] };
            FunctionalResult { spec: *s, value, face_count }
        })
        .collect())
}
