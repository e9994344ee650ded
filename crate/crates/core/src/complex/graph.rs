use rustc_hash::FxHashMap;

use crate::geometry::{within, PointCloud};
use crate::{Error, Result, MAX_DIM};

type CellKey = [i64; MAX_DIM];

/// Gilbert graph: `i ~ j` iff `‖x_i − x_j‖ ≤ delta`. Adjacency is stored in
/// compressed rows with each row sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborGraph {
    delta: f64,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    // first position in each row holding a neighbour larger than the row
    upper: Vec<usize>,
}

impl NeighborGraph {
    /// Builds the graph with a uniform grid of cell side `delta`; each point
    /// is compared only against the `3^d` surrounding cells.
    pub fn build(cloud: &PointCloud, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::param(format!("delta must be positive and finite, got {delta}")));
        }
        let n = cloud.len();
        if n > u32::MAX as usize {
            return Err(Error::param("too many points"));
        }
        let d = cloud.dim();
        if n == 0 {
            return Ok(Self::from_edges(0, delta, Vec::new()));
        }

        let mut lo = [f64::INFINITY; MAX_DIM];
        for p in cloud.points() {
            for c in 0..d {
                lo[c] = lo[c].min(p[c]);
            }
        }
        let key_of = |p: &[f64]| {
            let mut key = [0i64; MAX_DIM];
            for c in 0..d {
                key[c] = ((p[c] - lo[c]) / delta).floor() as i64;
            }
            key
        };

        let mut order: Vec<(CellKey, u32)> =
            cloud.points().enumerate().map(|(i, p)| (key_of(p), i as u32)).collect();
        order.sort_unstable();

        let mut cells: FxHashMap<CellKey, (usize, usize)> = FxHashMap::default();
        let mut start = 0;
        for i in 1..=n {
            if i == n || order[i].0 != order[start].0 {
                cells.insert(order[start].0, (start, i));
                start = i;
            }
        }

        let stencil = half_stencil(d);
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for (key, &(s0, e0)) in cells.iter() {
            for off in &stencil {
                let same = off.iter().all(|&o| o == 0);
                let mut nk = *key;
                for c in 0..d {
                    nk[c] += off[c];
                }
                let Some(&(s1, e1)) = cells.get(&nk) else { continue };
                for a in s0..e0 {
                    let ia = order[a].1;
                    let pa = cloud.point(ia as usize);
                    let from = if same { a + 1 } else { s1 };
                    for b in from..e1 {
                        let ib = order[b].1;
                        if within(pa, cloud.point(ib as usize), delta) {
                            edges.push((ia, ib));
                        }
                    }
                }
            }
        }
        Ok(Self::from_edges(n, delta, edges))
    }

    /// Builds from an undirected edge list (each edge listed once, any
    /// orientation, no self-loops).
    pub(crate) fn from_edges(n: usize, delta: f64, edges: Vec<(u32, u32)>) -> Self {
        let mut deg = vec![0usize; n + 1];
        for &(a, b) in &edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + deg[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; offsets[n]];
        for &(a, b) in &edges {
            targets[fill[a as usize]] = b;
            fill[a as usize] += 1;
            targets[fill[b as usize]] = a;
            fill[b as usize] += 1;
        }
        let mut upper = Vec::with_capacity(n);
        for i in 0..n {
            let row = &mut targets[offsets[i]..offsets[i + 1]];
            row.sort_unstable();
            upper.push(offsets[i] + row.partition_point(|&j| j <= i as u32));
        }
        Self { delta, offsets, targets, upper }
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// All neighbours of `i`, ascending.
    #[inline]
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    /// Neighbours of `i` with a larger index, ascending.
    #[inline]
    pub fn upper_neighbors(&self, i: usize) -> &[u32] {
        &self.targets[self.upper[i]..self.offsets[i + 1]]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.neighbors(i).binary_search(&(j as u32)).is_ok()
    }

    /// Edges `(i, j)` with `i < j`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.len()).flat_map(move |i| self.upper_neighbors(i).iter().map(move |&j| (i as u32, j)))
    }
}

/// Offsets in `{-1,0,1}^d` that are zero or lexicographically positive, so
/// every unordered pair of cells is visited once.
fn half_stencil(d: usize) -> Vec<CellKey> {
    let total = 3usize.pow(d as u32);
    let mut out = Vec::with_capacity(total / 2 + 1);
    for code in 0..total {
        let mut off = [0i64; MAX_DIM];
        let mut c = code;
        for o in off.iter_mut().take(d) {
            *o = (c % 3) as i64 - 1;
            c /= 3;
        }
        let first_nonzero = off[..d].iter().find(|&&o| o != 0);
        if first_nonzero.is_none_or(|&o| o > 0) {
            out.push(off);
        }
    }
    out
}
