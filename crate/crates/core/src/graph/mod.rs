//! Immutable undirected graphs in CSR form, plus traversal and generators.

mod bfs;
mod dijkstra;
mod generate;

pub use bfs::{bfs_bounded, hop_distances, BfsForest, BfsScratch};
pub use dijkstra::{dijkstra, dijkstra_into, DijkstraScratch};
pub use generate::{generate, Model};

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Result};

/// Hop distance of a vertex that was not reached.
pub const INF_HOPS: u64 = u64::MAX;

/// Weighted distance of a vertex that was not reached.
pub const INF_WEIGHT: f64 = f64::INFINITY;

/// An undirected edge stored canonically with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Canonical form of the pair; `a != b` is the caller's responsibility.
    pub fn new(a: usize, b: usize) -> Self {
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Simple undirected graph with optional positive edge weights.
///
/// Adjacency lists are sorted by neighbor id; `edges` is sorted and an
/// edge's position in it is its id.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    slot_edges: Vec<usize>,
    edges: Vec<Edge>,
    weights: Option<Vec<f64>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
            slot_edges: Vec::new(),
            edges: Vec::new(),
            weights: None,
        }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    /// `(neighbor, edge id)` pairs around `u`, ascending by neighbor.
    pub fn incident(&self, u: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let range = self.offsets[u]..self.offsets[u + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.slot_edges[range].iter().copied())
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    /// Weight of edge `id`; 1 for unweighted graphs.
    pub fn weight(&self, id: usize) -> f64 {
        match &self.weights {
            Some(w) => w[id],
            None => 1.0,
        }
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Id of the edge `{a, b}`, if present.
    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        if a >= self.n() || b >= self.n() {
            return None;
        }
        let range = self.offsets[a]..self.offsets[a + 1];
        self.targets[range.clone()]
            .binary_search(&b)
            .ok()
            .map(|i| self.slot_edges[range.start + i])
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_id(a, b).is_some()
    }

    /// The subgraph on the same vertex set keeping the given edge ids.
    pub fn subgraph(&self, ids: impl IntoIterator<Item = usize>) -> Graph {
        let mut b = GraphBuilder::new(self.n());
        for id in ids {
            let e = self.edges[id];
            b.push_unchecked(e.u, e.v, self.weight(id));
        }
        b.weighted = self.is_weighted();
        b.build().expect("subgraph of a valid graph is valid")
    }

    /// Same topology with every weight dropped.
    pub fn unweighted(&self) -> Graph {
        Graph {
            weights: None,
            ..self.clone()
        }
    }

    /// Same topology, weights replaced by `f(edge id, old weight)`.
    pub fn map_weights(&self, mut f: impl FnMut(usize, f64) -> f64) -> Result<Graph> {
        let w: Vec<f64> = (0..self.m()).map(|id| f(id, self.weight(id))).collect();
        if let Some(bad) = w.iter().position(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(invalid!("edge {} would get non-positive weight {}", bad, w[bad]));
        }
        Ok(Graph {
            weights: Some(w),
            ..self.clone()
        })
    }

    /// Sum of the weights of all edges.
    pub fn total_weight(&self) -> f64 {
        (0..self.m()).map(|id| self.weight(id)).sum()
    }

    /// Connected component label of every vertex, labels in order of the
    /// smallest vertex of each component.
    pub fn components(&self) -> Vec<usize> {
        let n = self.n();
        let mut label = vec![usize::MAX; n];
        let mut stack = Vec::new();
        let mut next = 0;
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        label
    }
}

/// Accumulates edges and produces a [`Graph`].
///
/// Parallel edges collapse to one, keeping the smallest weight.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    raw: Vec<(usize, usize, f64)>,
    weighted: bool,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            raw: Vec::new(),
            weighted: false,
        }
    }

    pub fn with_capacity(n: usize, edges: usize) -> Self {
        GraphBuilder {
            n,
            raw: Vec::with_capacity(edges),
            weighted: false,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<&mut Self> {
        self.check(a, b)?;
        self.raw.push((a, b, 1.0));
        Ok(self)
    }

    pub fn add_weighted_edge(&mut self, a: usize, b: usize, w: f64) -> Result<&mut Self> {
        self.check(a, b)?;
        if !(w > 0.0 && w.is_finite()) {
            return Err(invalid!("edge ({a}, {b}) has non-positive weight {w}"));
        }
        self.weighted = true;
        self.raw.push((a, b, w));
        Ok(self)
    }

    /// Marks the graph as weighted even if no weighted edge is added.
    pub fn weighted(&mut self, yes: bool) -> &mut Self {
        self.weighted = yes;
        self
    }

    fn check(&self, a: usize, b: usize) -> Result<()> {
        if a >= self.n || b >= self.n {
            return Err(invalid!("edge ({a}, {b}) out of range for n = {}", self.n));
        }
        if a == b {
            return Err(invalid!("self-loop at vertex {a}"));
        }
        Ok(())
    }

    pub(crate) fn push_unchecked(&mut self, a: usize, b: usize, w: f64) {
        self.raw.push((a, b, w));
    }

    pub fn build(mut self) -> Result<Graph> {
        for &(a, b, _) in &self.raw {
            self.check(a, b)?;
        }
        let mut canon: Vec<(Edge, f64)> = self
            .raw
            .drain(..)
            .map(|(a, b, w)| (Edge::new(a, b), w))
            .collect();
        canon.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.total_cmp(&y.1)));
        canon.dedup_by(|later, first| later.0 == first.0);

        let n = self.n;
        let mut degree = vec![0usize; n + 1];
        for (e, _) in &canon {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for u in 0..n {
            offsets[u + 1] = offsets[u] + degree[u];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0usize; 2 * canon.len()];
        let mut slot_edges = vec![0usize; 2 * canon.len()];
        // Edges are sorted by (u, v), so filling in this order leaves every
        // adjacency list sorted: neighbors smaller than x arrive as (w, x)
        // pairs before any (x, w) pair.
        for (id, (e, _)) in canon.iter().enumerate() {
            targets[fill[e.u]] = e.v;
            slot_edges[fill[e.u]] = id;
            fill[e.u] += 1;
            targets[fill[e.v]] = e.u;
            slot_edges[fill[e.v]] = id;
            fill[e.v] += 1;
        }
        debug_assert!((0..n).all(|u| targets[offsets[u]..offsets[u + 1]]
            .windows(2)
            .all(|w| w[0] < w[1])));
        let weights = self
            .weighted
            .then(|| canon.iter().map(|(_, w)| *w).collect());
        Ok(Graph {
            offsets,
            targets,
            slot_edges,
            edges: canon.into_iter().map(|(e, _)| e).collect(),
            weights,
        })
    }
}

/// A set of edge ids of a host graph, stored as a bitmap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    bits: Vec<u64>,
    len: usize,
}

impl EdgeSet {
    pub fn new(m: usize) -> Self {
        EdgeSet {
            bits: vec![0; m.div_ceil(64)],
            len: 0,
        }
    }

    /// Returns `true` if `id` was not yet present.
    pub fn insert(&mut self, id: usize) -> bool {
        let (w, b) = (id / 64, id % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        if fresh {
            self.bits[w] |= 1 << b;
            self.len += 1;
        }
        fresh
    }

    pub fn contains(&self, id: usize) -> bool {
        self.bits[id / 64] & (1 << (id % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            core::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &EdgeSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= *b;
        }
        self.len = self.bits.iter().map(|w| w.count_ones() as usize).sum();
    }
}
