use serde::{Deserialize, Serialize};

use super::NeighborGraph;
use crate::geometry::{min_enclosing_ball_radius, simplex_volume_of, PointCloud};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexKind {
    Rips,
    Cech,
}

impl ComplexKind {
    pub fn name(self) -> &'static str {
        match self {
            ComplexKind::Rips => "rips",
            ComplexKind::Cech => "cech",
        }
    }
}

impl std::str::FromStr for ComplexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rips" => Ok(ComplexKind::Rips),
            "cech" => Ok(ComplexKind::Cech),
            _ => Err(Error::param(format!("unknown complex kind `{s}`"))),
        }
    }
}

/// A face as strictly increasing vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    pub fn new(vertices: Vec<u32>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::param("simplex without vertices"));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::param("simplex vertices must be strictly increasing"));
        }
        Ok(Self(vertices))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }
}

/// All `k`-faces of one complex in lexicographic order, with optional
/// cached volumes.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceStream {
    k: usize,
    vertices: Vec<u32>,
    volumes: Option<Vec<f64>>,
}

impl FaceStream {
    pub fn new(k: usize) -> Self {
        Self { k, vertices: Vec::new(), volumes: None }
    }

    /// Builds a stream from explicit faces; they are validated and sorted.
    pub fn from_faces(k: usize, faces: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let mut faces: Vec<Simplex> = faces.into_iter().collect();
        if let Some(bad) = faces.iter().find(|f| f.dim() != k) {
            return Err(Error::param(format!("face of dimension {} in a {k}-stream", bad.dim())));
        }
        faces.sort();
        faces.dedup();
        let mut s = Self::new(k);
        for f in &faces {
            s.vertices.extend_from_slice(f.vertices());
        }
        Ok(s)
    }

    pub(crate) fn push(&mut self, face: &[u32]) {
        debug_assert_eq!(face.len(), self.k + 1);
        self.vertices.extend_from_slice(face);
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.vertices.len() / (self.k + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn faces(&self) -> impl ExactSizeIterator<Item = &[u32]> {
        self.vertices.chunks_exact(self.k + 1)
    }

    pub fn face(&self, i: usize) -> Simplex {
        let s = self.k + 1;
        Simplex(self.vertices[i * s..(i + 1) * s].to_vec())
    }

    pub fn contains(&self, face: &[u32]) -> bool {
        let s = self.k + 1;
        if face.len() != s {
            return false;
        }
        let n = self.len();
        let (mut lo, mut hi) = (0, n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.vertices[mid * s..(mid + 1) * s].cmp(face) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn volumes(&self) -> Option<&[f64]> {
        self.volumes.as_deref()
    }

    /// Caches `λ_k` of every face; 0-faces get volume 1.
    pub fn compute_volumes(&mut self, cloud: &PointCloud) -> Result<()> {
        let k = self.k;
        let vols = if k == 0 {
            vec![1.0; self.len()]
        } else {
            self.faces()
                .map(|f| simplex_volume_of(k, cloud.dim(), |i| cloud.point(f[i] as usize)))
                .collect::<Result<Vec<_>>>()?
        };
        self.volumes = Some(vols);
        Ok(())
    }

    pub fn with_volumes(mut self, cloud: &PointCloud) -> Result<Self> {
        self.compute_volumes(cloud)?;
        Ok(self)
    }
}

/// Which dimensions a walk must hand to its visitor. Unvisited dimensions
/// are only counted, which lets the deepest Rips level be counted from
/// candidate-set sizes without materialising faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkPlan {
    visit: Vec<bool>,
}

impl WalkPlan {
    pub fn count_only(k_max: usize) -> Self {
        Self { visit: vec![false; k_max + 1] }
    }

    pub fn visit_all(k_max: usize) -> Self {
        Self { visit: vec![true; k_max + 1] }
    }

    pub fn with_visit(mut self, k: usize) -> Self {
        if let Some(v) = self.visit.get_mut(k) {
            *v = true;
        }
        self
    }

    pub fn k_max(&self) -> usize {
        self.visit.len() - 1
    }

    pub fn visits(&self, k: usize) -> bool {
        self.visit.get(k).copied().unwrap_or(false)
    }
}

struct Ctx<'a> {
    graph: &'a NeighborGraph,
    cech: Option<&'a PointCloud>,
    plan: &'a WalkPlan,
    half_delta: f64,
}

struct State<F> {
    counts: Vec<u64>,
    face: Vec<u32>,
    visit: F,
}

/// Streams every face of dimension `≤ plan.k_max()` by ordered expansion: a
/// clique is only extended by common neighbours with larger index, so each
/// face is produced exactly once and each dimension comes out in
/// lexicographic order. Returns the f-vector.
///
/// For [`ComplexKind::Cech`] the candidates are the Rips cliques at the same
/// `delta`, kept when their smallest enclosing ball has radius `≤ delta/2`.
/// Čech faces are closed under taking subsets, so a rejected face is not
/// extended further.
pub fn walk_faces<F>(
    cloud: &PointCloud,
    graph: &NeighborGraph,
    kind: ComplexKind,
    plan: &WalkPlan,
    visit: F,
) -> Result<Vec<u64>>
where
    F: FnMut(&[u32]),
{
    if cloud.len() != graph.len() {
        return Err(Error::param("graph and cloud sizes differ"));
    }
    let cech = (kind == ComplexKind::Cech).then_some(cloud);
    walk(graph, cech, plan, visit)
}

fn walk<F: FnMut(&[u32])>(
    graph: &NeighborGraph,
    cech: Option<&PointCloud>,
    plan: &WalkPlan,
    visit: F,
) -> Result<Vec<u64>> {
    let k_max = plan.k_max();
    let ctx = Ctx { graph, cech, plan, half_delta: 0.5 * graph.delta() };
    let mut state = State { counts: vec![0; k_max + 1], face: Vec::with_capacity(k_max + 1), visit };
    let mut bufs: Vec<Vec<u32>> = vec![Vec::new(); k_max.max(1)];
    for v in 0..graph.len() {
        state.face.clear();
        state.face.push(v as u32);
        state.counts[0] += 1;
        if plan.visits(0) {
            (state.visit)(&state.face);
        }
        if k_max > 0 {
            expand(&ctx, &mut state, 1, graph.upper_neighbors(v), &mut bufs)?;
        }
    }
    Ok(state.counts)
}

/// Extends `state.face` (which has `dim` vertices) by each candidate.
fn expand<F: FnMut(&[u32])>(
    ctx: &Ctx<'_>,
    state: &mut State<F>,
    dim: usize,
    cand: &[u32],
    bufs: &mut [Vec<u32>],
) -> Result<()> {
    let k_max = ctx.plan.k_max();
    if dim == k_max && ctx.cech.is_none() && !ctx.plan.visits(dim) {
        state.counts[dim] += cand.len() as u64;
        return Ok(());
    }
    let count_next_only = dim + 1 == k_max && ctx.cech.is_none() && !ctx.plan.visits(k_max);
    for (idx, &u) in cand.iter().enumerate() {
        state.face.push(u);
        if dim >= 2 {
            if let Some(cloud) = ctx.cech {
                if !cech_ok(cloud, &state.face, ctx.half_delta)? {
                    state.face.pop();
                    continue;
                }
            }
        }
        state.counts[dim] += 1;
        if ctx.plan.visits(dim) {
            (state.visit)(&state.face);
        }
        if dim < k_max {
            let rest = &cand[idx + 1..];
            let up = ctx.graph.upper_neighbors(u as usize);
            if count_next_only {
                state.counts[dim + 1] += intersect_count(rest, up);
            } else {
                let (buf, deeper) = bufs.split_first_mut().expect("one buffer per level");
                buf.clear();
                intersect_into(rest, up, buf);
                if !buf.is_empty() {
                    expand(ctx, state, dim + 1, buf, deeper)?;
                }
            }
        }
        state.face.pop();
    }
    Ok(())
}

fn cech_ok(cloud: &PointCloud, face: &[u32], half_delta: f64) -> Result<bool> {
    let mut pts = [&[][..]; crate::MAX_DIM + 2];
    if face.len() > pts.len() {
        let v: Vec<&[f64]> = face.iter().map(|&i| cloud.point(i as usize)).collect();
        return Ok(min_enclosing_ball_radius(&v)? <= half_delta);
    }
    for (slot, &i) in pts.iter_mut().zip(face) {
        *slot = cloud.point(i as usize);
    }
    Ok(min_enclosing_ball_radius(&pts[..face.len()])? <= half_delta)
}

#[inline]
fn intersect_into(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (x, y) = (a[i], b[j]);
        if x < y {
            i += 1;
        } else if y < x {
            j += 1;
        } else {
            out.push(x);
            i += 1;
            j += 1;
        }
    }
}

#[inline]
fn intersect_count(a: &[u32], b: &[u32]) -> u64 {
    let (mut i, mut j, mut n) = (0, 0, 0u64);
    while i < a.len() && j < b.len() {
        let (x, y) = (a[i], b[j]);
        i += (x <= y) as usize;
        j += (y <= x) as usize;
        n += (x == y) as u64;
    }
    n
}

fn collect(
    graph: &NeighborGraph,
    cech: Option<&PointCloud>,
    k_max: usize,
) -> Result<Vec<FaceStream>> {
    let mut streams: Vec<FaceStream> = (0..=k_max).map(FaceStream::new).collect();
    walk(graph, cech, &WalkPlan::visit_all(k_max), |f| streams[f.len() - 1].push(f))?;
    Ok(streams)
}

/// Cliques of the Gilbert graph with at most `k_max + 1` vertices.
pub fn enumerate_rips_faces(graph: &NeighborGraph, k_max: usize) -> Vec<FaceStream> {
    collect(graph, None, k_max).expect("rips enumeration has no failure mode")
}

pub fn enumerate_cech_faces(cloud: &PointCloud, delta: f64, k_max: usize) -> Result<Vec<FaceStream>> {
    let graph = NeighborGraph::build(cloud, delta)?;
    collect(&graph, Some(cloud), k_max)
}

/// Faces of either complex, with volumes cached when requested.
pub fn enumerate_faces(
    cloud: &PointCloud,
    delta: f64,
    kind: ComplexKind,
    k_max: usize,
    with_volumes: bool,
) -> Result<Vec<FaceStream>> {
    let mut streams = match kind {
        ComplexKind::Rips => enumerate_rips_faces(&NeighborGraph::build(cloud, delta)?, k_max),
        ComplexKind::Cech => enumerate_cech_faces(cloud, delta, k_max)?,
    };
    if with_volumes {
        for s in streams.iter_mut().filter(|s| s.k() <= cloud.dim()) {
            s.compute_volumes(cloud)?;
        }
    }
    Ok(streams)
}

pub fn f_vector(streams: &[FaceStream]) -> Vec<u64> {
    streams.iter().map(|s| s.len() as u64).collect()
}
