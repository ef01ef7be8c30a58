#![allow(dead_code)]

use spanner_core::Graph;

/// Floyd-Warshall over edge weights; independent of the library's searches.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = 0.0;
    }
    for (id, e) in g.edges().iter().enumerate() {
        let w = g.weight(id);
        if w < d[e.u][e.v] {
            d[e.u][e.v] = w;
            d[e.v][e.u] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i][k];
            if dik == f64::INFINITY {
                continue;
            }
            for j in 0..n {
                let c = dik + d[k][j];
                if c < d[i][j] {
                    d[i][j] = c;
                }
            }
        }
    }
    d
}

/// Bellman-Ford from one source.
pub fn bellman_ford(g: &Graph, s: usize) -> Vec<f64> {
    let mut d = vec![f64::INFINITY; g.n()];
    d[s] = 0.0;
    for _ in 0..g.n() {
        let mut changed = false;
        for (id, e) in g.edges().iter().enumerate() {
            let w = g.weight(id);
            if d[e.u] + w < d[e.v] {
                d[e.v] = d[e.u] + w;
                changed = true;
            }
            if d[e.v] + w < d[e.u] {
                d[e.u] = d[e.v] + w;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    d
}

/// Largest `d_H / d_G` over connected pairs, with `d_H` infinite if a pair
/// connected in `g` is disconnected in `h`.
pub fn max_stretch(dg: &[Vec<f64>], dh: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 1.0;
    for (rg, rh) in dg.iter().zip(dh) {
        for (&a, &b) in rg.iter().zip(rh) {
            if a > 0.0 && a.is_finite() {
                worst = worst.max(b / a);
            }
        }
    }
    worst
}
