use alloc::vec;
use alloc::vec::Vec;

use super::{Graph, INF_HOPS};
use crate::error::{invalid, Result};

/// Result of a bounded multi-source BFS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsForest {
    /// Hop distance to the nearest source, [`INF_HOPS`] beyond the bound.
    pub dist: Vec<u64>,
    /// Predecessor on the forest; `None` for sources and unreached vertices.
    pub parent: Vec<Option<usize>>,
    /// Source whose tree contains the vertex.
    pub root: Vec<Option<usize>>,
}

impl BfsForest {
    pub fn reached(&self, v: usize) -> bool {
        self.dist[v] != INF_HOPS
    }

    /// Vertices from `v` up to its root, `v` first.
    pub fn path_to_root(&self, v: usize) -> Vec<usize> {
        let mut path = Vec::new();
        if !self.reached(v) {
            return path;
        }
        let mut x = v;
        path.push(x);
        while let Some(p) = self.parent[x] {
            path.push(p);
            x = p;
        }
        path
    }
}

/// BFS from every vertex of `sources` simultaneously, up to `depth` hops.
///
/// A vertex equidistant from several sources joins the one with the smallest
/// id; among parents leading to that source the smallest id wins.
pub fn bfs_bounded(g: &Graph, sources: &[usize], depth: u64) -> Result<BfsForest> {
    if sources.is_empty() {
        return Err(invalid!("bfs needs at least one source"));
    }
    let n = g.n();
    if let Some(&s) = sources.iter().find(|&&s| s >= n) {
        return Err(invalid!("source {s} out of range for n = {n}"));
    }
    let mut dist = vec![INF_HOPS; n];
    let mut parent = vec![None; n];
    let mut root = vec![None; n];
    let mut frontier: Vec<usize> = Vec::with_capacity(sources.len());
    for &s in sources {
        if dist[s] == INF_HOPS {
            dist[s] = 0;
            root[s] = Some(s);
            frontier.push(s);
        }
    }
    let mut next = Vec::new();
    let mut layer = 0u64;
    while !frontier.is_empty() && layer < depth {
        for &u in &frontier {
            let key = (root[u], Some(u));
            for &v in g.neighbors(u) {
                if dist[v] == INF_HOPS {
                    dist[v] = layer + 1;
                    root[v] = key.0;
                    parent[v] = key.1;
                    next.push(v);
                } else if dist[v] == layer + 1 && key < (root[v], parent[v]) {
                    root[v] = key.0;
                    parent[v] = key.1;
                }
            }
        }
        frontier.clear();
        core::mem::swap(&mut frontier, &mut next);
        layer += 1;
    }
    Ok(BfsForest { dist, parent, root })
}

/// Exact hop distances from `s`.
pub fn hop_distances(g: &Graph, s: usize) -> Vec<u64> {
    let mut dist = vec![INF_HOPS; g.n()];
    let mut queue = alloc::collections::VecDeque::new();
    dist[s] = 0;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == INF_HOPS {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Reusable state for many single-source bounded BFS runs.
///
/// Each run only touches the vertices it visits.
#[derive(Debug, Clone)]
pub struct BfsScratch {
    stamp: Vec<u32>,
    epoch: u32,
    dist: Vec<u64>,
    parent: Vec<usize>,
    order: Vec<usize>,
}

impl BfsScratch {
    pub fn new(n: usize) -> Self {
        BfsScratch {
            stamp: vec![0; n],
            epoch: 0,
            dist: vec![0; n],
            parent: vec![usize::MAX; n],
            order: Vec::new(),
        }
    }

    /// Explores from `source` up to `depth` hops.
    pub fn run(&mut self, g: &Graph, source: usize, depth: u64) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.order.clear();
        self.stamp[source] = self.epoch;
        self.dist[source] = 0;
        self.parent[source] = usize::MAX;
        self.order.push(source);
        let mut head = 0;
        while head < self.order.len() {
            let u = self.order[head];
            head += 1;
            let du = self.dist[u];
            if du >= depth {
                continue;
            }
            for &v in g.neighbors(u) {
                if self.stamp[v] != self.epoch {
                    self.stamp[v] = self.epoch;
                    self.dist[v] = du + 1;
                    self.parent[v] = u;
                    self.order.push(v);
                }
            }
        }
    }

    /// Visited vertices in nondecreasing distance order.
    pub fn visited(&self) -> &[usize] {
        &self.order
    }

    pub fn dist(&self, v: usize) -> Option<u64> {
        (self.stamp[v] == self.epoch).then(|| self.dist[v])
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        if self.stamp[v] == self.epoch && self.parent[v] != usize::MAX {
            Some(self.parent[v])
        } else {
            None
        }
    }
}
