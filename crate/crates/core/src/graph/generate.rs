use rand_core::RngCore;

use super::{Graph, GraphBuilder};
use crate::error::{invalid, Result};
use crate::rng::{streams, unit_open_closed, Substream};

/// Random and deterministic graph families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// `G(n, p)`.
    ErdosRenyi { n: usize, p: f64 },
    /// `w x h` grid; vertex `(x, y)` has id `y * w + x`.
    Grid { w: usize, h: usize },
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    /// Vertex 0 joined to `leaves` leaves.
    Star { leaves: usize },
    /// `G(n, p)` with weights uniform on `[1, wmax]`.
    RandomWeighted { n: usize, p: f64, wmax: f64 },
}

/// Builds a graph of the given family; deterministic in `(model, seed)`.
pub fn generate(model: Model, seed: u64) -> Result<Graph> {
    match model {
        Model::ErdosRenyi { n, p } => {
            check_p(p)?;
            let mut b = GraphBuilder::new(n);
            gnp_edges(n, p, seed, |u, v| b.push_unchecked(u, v, 1.0));
            b.build()
        }
        Model::RandomWeighted { n, p, wmax } => {
            check_p(p)?;
            if !(wmax >= 1.0 && wmax.is_finite()) {
                return Err(invalid!("wmax must be a finite value >= 1, got {wmax}"));
            }
            let weights = Substream::new(seed, streams::GENERATOR + 1);
            let mut b = GraphBuilder::new(n);
            let mut next = 0u64;
            gnp_edges(n, p, seed, |u, v| {
                let w = 1.0 + (wmax - 1.0) * weights.unit_closed_open(next);
                next += 1;
                b.push_unchecked(u, v, w);
            });
            b.weighted(true);
            b.build()
        }
        Model::Grid { w, h } => {
            let mut b = GraphBuilder::new(w * h);
            for y in 0..h {
                for x in 0..w {
                    let id = y * w + x;
                    if x + 1 < w {
                        b.push_unchecked(id, id + 1, 1.0);
                    }
                    if y + 1 < h {
                        b.push_unchecked(id, id + w, 1.0);
                    }
                }
            }
            b.build()
        }
        Model::Path { n } => {
            let mut b = GraphBuilder::new(n);
            for u in 1..n {
                b.push_unchecked(u - 1, u, 1.0);
            }
            b.build()
        }
        Model::Cycle { n } => {
            if n < 3 {
                return Err(invalid!("a cycle needs at least 3 vertices, got {n}"));
            }
            let mut b = GraphBuilder::new(n);
            for u in 0..n {
                b.push_unchecked(u, (u + 1) % n, 1.0);
            }
            b.build()
        }
        Model::Complete { n } => {
            let mut b = GraphBuilder::with_capacity(n, n * n.saturating_sub(1) / 2);
            for u in 0..n {
                for v in u + 1..n {
                    b.push_unchecked(u, v, 1.0);
                }
            }
            b.build()
        }
        Model::Star { leaves } => {
            let mut b = GraphBuilder::new(leaves + 1);
            for v in 1..=leaves {
                b.push_unchecked(0, v, 1.0);
            }
            b.build()
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(invalid!("edge probability must lie in [0, 1], got {p}"))
    }
}

/// Emits every pair of `G(n, p)` using geometric skips over the lower
/// triangle, so the cost is proportional to the number of edges.
fn gnp_edges(n: usize, p: f64, seed: u64, mut emit: impl FnMut(usize, usize)) {
    if n < 2 || p == 0.0 {
        return;
    }
    if p == 1.0 {
        for v in 1..n {
            for w in 0..v {
                emit(w, v);
            }
        }
        return;
    }
    let mut rng = Substream::new(seed, streams::GENERATOR).rng(0);
    let log_q = libm::log1p(-p);
    let (mut v, mut w) = (1usize, -1i64);
    while v < n {
        let u = unit_open_closed(rng.next_u64());
        let skip = libm::floor(libm::log(u) / log_q);
        // Skips beyond the remaining triangle end the stream.
        if skip >= (n as f64) * (n as f64) {
            break;
        }
        w += 1 + skip as i64;
        while v < n && w >= v as i64 {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            emit(w as usize, v);
        }
    }
}
