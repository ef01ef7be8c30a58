use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{Graph, INF_WEIGHT};

#[derive(Debug, Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    vertex: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Weighted single-source distances; unit weights on unweighted graphs.
pub fn dijkstra(g: &Graph, source: usize) -> Vec<f64> {
    let mut scratch = DijkstraScratch::default();
    let mut dist = vec![INF_WEIGHT; g.n()];
    dijkstra_into(g, source, &mut dist, &mut scratch);
    dist
}

/// Heap storage reused across runs.
#[derive(Debug, Default, Clone)]
pub struct DijkstraScratch {
    heap: BinaryHeap<Entry>,
}

/// Like [`dijkstra`], writing into a caller-provided buffer of length `n`.
pub fn dijkstra_into(g: &Graph, source: usize, dist: &mut [f64], scratch: &mut DijkstraScratch) {
    dist.iter_mut().for_each(|d| *d = INF_WEIGHT);
    let heap = &mut scratch.heap;
    heap.clear();
    dist[source] = 0.0;
    heap.push(Entry {
        dist: 0.0,
        vertex: source,
    });
    while let Some(Entry { dist: d, vertex: u }) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for (v, id) in g.incident(u) {
            let nd = d + g.weight(id);
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Entry { dist: nd, vertex: v });
            }
        }
    }
}
