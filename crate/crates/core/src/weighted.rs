//! Spanners of weighted graphs by scale decomposition and contraction.
//!
//! Edge weights are normalized so the lightest edge weighs 1 and cut into
//! geometric categories of ratio `1+eps`. Categories are dealt round-robin
//! into `ell` scales, so consecutive categories of one scale differ in
//! weight by at least `k^{c_w}`. Each scale is processed light to heavy: the
//! unweighted construction runs on the graph whose vertices are the current
//! super-vertices, then its clusters are contracted before the next level.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::graph::{EdgeSet, Graph, GraphBuilder};
use crate::mult::{broadcast, sample_radii, select_edges, ExpClusterParams, SpannerResult};

/// Smallest integer `t >= 0` with `base^t >= x`, for `x >= 1`.
fn ceil_log(base: f64, x: f64) -> u32 {
    let mut t = libm::ceil(libm::log(x) / libm::log(base)).max(0.0) as u32;
    while t > 0 && libm::pow(base, (t - 1) as f64) >= x {
        t -= 1;
    }
    while libm::pow(base, t as f64) < x {
        t += 1;
    }
    t
}

/// 1-based category of a normalized weight `w >= 1`:
/// `w` lies in `[(1+eps)^{t-1}, (1+eps)^t)`.
fn category(base: f64, w: f64) -> u32 {
    let mut t = libm::floor(libm::log(w) / libm::log(base)).max(0.0) as u32 + 1;
    while t > 1 && libm::pow(base, (t - 1) as f64) > w {
        t -= 1;
    }
    while libm::pow(base, t as f64) <= w {
        t += 1;
    }
    t
}

/// Contraction exponent: 3, raised to `2 + ceil(log_k(1/eps))` whenever
/// `k^{-(c_w-1)} > eps`.
pub fn contraction_exponent(k: u32, eps: f64) -> u32 {
    if k < 2 {
        return 3;
    }
    let kf = k as f64;
    if libm::pow(kf, -2.0) > eps {
        2 + libm::ceil(libm::log(1.0 / eps) / libm::log(kf)) as u32
    } else {
        3
    }
}

/// `(2k-1)(1+eps)(1+k^{-(c_w-1)})`.
pub fn stretch_bound(k: u32, eps: f64, c_w: u32) -> f64 {
    let kf = k as f64;
    (2.0 * kf - 1.0) * (1.0 + eps) * (1.0 + libm::pow(kf, -((c_w as f64) - 1.0)))
}

/// Edges of one category inside one scale.
#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    /// 1-based category index `t`.
    pub category: u32,
    /// Lower end of the category, in input units.
    pub base_weight: f64,
    /// Edge ids, ascending.
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scale {
    /// Residue `(t - 1) mod ell` shared by the categories of this scale.
    pub index: u32,
    /// Nonempty categories, lightest first.
    pub levels: Vec<Level>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScaleDecomposition {
    pub eps: f64,
    pub k: u32,
    pub c_w: u32,
    /// Minimum input weight; normalized weight = weight / scale_factor.
    pub scale_factor: f64,
    /// Number of categories.
    pub lambda: u32,
    /// Number of scales.
    pub ell: u32,
    /// Categories per scale, `ceil(lambda / ell)`.
    pub q: u32,
    /// Category of every edge id.
    pub edge_category: Vec<u32>,
    /// Scales that contain at least one edge, by index.
    pub scales: Vec<Scale>,
}

/// Splits the edges of `g` into categories and scales.
pub fn decompose(g: &Graph, k: u32, eps: f64, c_w: u32) -> Result<ScaleDecomposition> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(invalid!("eps must lie in (0, 1), got {eps}"));
    }
    if k == 0 {
        return Err(invalid!("k must be at least 1"));
    }
    let weights: Vec<f64> = (0..g.m()).map(|id| g.weight(id)).collect();
    if let Some(w) = weights.iter().find(|&&w| !(w > 0.0 && w.is_finite())) {
        return Err(invalid!("non-positive edge weight {w}"));
    }
    let base = 1.0 + eps;
    let scale_factor = weights.iter().copied().fold(f64::INFINITY, f64::min);
    let scale_factor = if scale_factor.is_finite() { scale_factor } else { 1.0 };
    let w_max = weights.iter().map(|w| w / scale_factor).fold(1.0, f64::max);
    let lambda = ceil_log(base, w_max).max(1);
    let ell = ceil_log(base, libm::pow(k as f64, c_w as f64)).max(1);
    let q = lambda.div_ceil(ell);

    let edge_category: Vec<u32> = weights
        .iter()
        .map(|&w| category(base, w / scale_factor).min(lambda))
        .collect();
    let mut by_category: Vec<Vec<usize>> = vec![Vec::new(); lambda as usize + 1];
    for (id, &t) in edge_category.iter().enumerate() {
        by_category[t as usize].push(id);
    }
    let mut scales: Vec<Scale> = Vec::new();
    for j in 0..ell {
        let mut levels = Vec::new();
        for t in (1..=lambda).filter(|t| (t - 1) % ell == j) {
            let edges = core::mem::take(&mut by_category[t as usize]);
            if !edges.is_empty() {
                levels.push(Level {
                    category: t,
                    base_weight: scale_factor * libm::pow(base, (t - 1) as f64),
                    edges,
                });
            }
        }
        if !levels.is_empty() {
            scales.push(Scale { index: j, levels });
        }
    }
    Ok(ScaleDecomposition {
        eps,
        k,
        c_w,
        scale_factor,
        lambda,
        ell,
        q,
        edge_category,
        scales,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedParams {
    pub k: u32,
    pub eps: f64,
    /// Success parameter of every level's unweighted run.
    pub c: f64,
    /// Defaults to [`contraction_exponent`].
    pub c_w: Option<u32>,
    pub seed: u64,
    /// Attempts per level before giving up.
    pub max_level_attempts: usize,
}

impl WeightedParams {
    pub fn new(k: u32, eps: f64, seed: u64) -> Self {
        WeightedParams {
            k,
            eps,
            c: 4.0,
            c_w: None,
            seed,
            max_level_attempts: 64,
        }
    }

    pub fn contraction_exponent(&self) -> u32 {
        self.c_w.unwrap_or_else(|| contraction_exponent(self.k, self.eps))
    }
}

/// One level of one scale.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionLevel {
    pub category: u32,
    /// Super-vertex of every original vertex when the level starts.
    pub super_vertices: Vec<usize>,
    pub super_count: usize,
    /// Original edge ids chosen at this level.
    pub level_spanner_edges: Vec<usize>,
    /// Original edge ids joining each super-vertex to its cluster parent.
    pub cluster_trees: Vec<usize>,
    pub attempts: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSpanner {
    /// `radii` holds the first level of the first scale, whose vertices are
    /// the original vertices; `attempts` counts every level attempt.
    pub result: SpannerResult,
    pub decomposition: ScaleDecomposition,
    /// Levels of `decomposition.scales[s]` at position `s`.
    pub levels: Vec<Vec<ContractionLevel>>,
}

impl WeightedSpanner {
    pub fn stretch_bound(&self) -> f64 {
        stretch_bound(self.decomposition.k, self.decomposition.eps, self.decomposition.c_w)
    }
}

/// Stream id of `attempt` at `level` of `scale`; `(0, 0, 0)` maps to 0.
fn level_stream(scale: u32, level: usize, attempt: usize) -> u64 {
    ((scale as u64) << 40) | ((level as u64) << 20) | attempt as u64
}

/// Builds a `(2k-1)(1+eps)(1+k^{-(c_w-1)})`-spanner of a weighted graph.
pub fn build_weighted_spanner(g: &Graph, params: &WeightedParams) -> Result<WeightedSpanner> {
    let c_w = params.contraction_exponent();
    let decomposition = decompose(g, params.k, params.eps, c_w)?;
    let n = g.n();
    if params.k == 1 {
        // Stretch 1 admits no edge removal.
        return Ok(WeightedSpanner {
            result: SpannerResult {
                edges: (0..g.m()).collect(),
                radii: Vec::new(),
                radii_ok: true,
                attempts: 0,
            },
            decomposition,
            levels: Vec::new(),
        });
    }
    let kf = params.k as f64;
    let mut spanner = EdgeSet::new(g.m());
    let mut all_levels = Vec::new();
    let mut first_radii: Option<Vec<f64>> = None;
    let mut total_attempts = 0usize;

    for scale in &decomposition.scales {
        let mut super_of: Vec<usize> = (0..n).collect();
        let mut super_count = n;
        let mut levels = Vec::new();
        for (li, level) in scale.levels.iter().enumerate() {
            // Quotient edges with their lightest representative.
            let mut reps: Vec<(usize, usize, f64, usize)> = level
                .edges
                .iter()
                .filter_map(|&id| {
                    let e = g.edge(id);
                    let (a, b) = (super_of[e.u], super_of[e.v]);
                    (a != b).then(|| (a.min(b), a.max(b), g.weight(id), id))
                })
                .collect();
            reps.sort_by(|x, y| {
                (x.0, x.1)
                    .cmp(&(y.0, y.1))
                    .then(x.2.total_cmp(&y.2))
                    .then(x.3.cmp(&y.3))
            });
            reps.dedup_by(|later, first| (later.0, later.1) == (first.0, first.1));
            let mut qb = GraphBuilder::with_capacity(super_count, reps.len());
            for &(a, b, _, _) in &reps {
                qb.add_edge(a, b)?;
            }
            let quotient = qb.build()?;
            // The builder keeps edges sorted by endpoint pair, like `reps`.
            debug_assert!(quotient
                .edges()
                .iter()
                .zip(&reps)
                .all(|(e, r)| (e.u, e.v) == (r.0, r.1)));

            let mut chosen = None;
            for attempt in 0..params.max_level_attempts {
                total_attempts += 1;
                let p = ExpClusterParams::new(super_count, params.k, params.c, params.seed)?
                    .with_stream(level_stream(scale.index, li, attempt));
                let radii = sample_radii(&p, super_count);
                if radii.iter().all(|&r| r < kf) {
                    chosen = Some((radii, attempt + 1));
                    break;
                }
            }
            let Some((radii, attempts)) = chosen else {
                return Err(Error::GaveUp {
                    attempts: params.max_level_attempts,
                    reason: format!(
                        "scale {} level {} (category {}, {} super-vertices): no draw with all radii below k",
                        scale.index, li, level.category, super_count
                    ),
                });
            };
            let state = broadcast(&quotient, &radii, params.k);
            if first_radii.is_none() {
                first_radii = Some(radii);
            }
            let level_edges: Vec<usize> = select_edges(&quotient, &state)
                .iter()
                .map(|qid| reps[qid].3)
                .collect();
            for &id in &level_edges {
                spanner.insert(id);
            }
            let cluster_trees: Vec<usize> = state
                .vertices
                .iter()
                .enumerate()
                .filter(|(x, s)| s.best.via != *x)
                .map(|(x, s)| {
                    let qid = quotient.edge_id(x, s.best.via).expect("via is adjacent");
                    reps[qid].3
                })
                .collect();

            // Contract: clusters renumbered in order of their centers.
            let cluster = state.cluster_of();
            let mut new_id = vec![usize::MAX; super_count];
            let mut next = 0;
            for x in 0..super_count {
                let c = cluster[x];
                if new_id[c] == usize::MAX {
                    new_id[c] = next;
                    next += 1;
                }
            }
            levels.push(ContractionLevel {
                category: level.category,
                super_vertices: super_of.clone(),
                super_count,
                level_spanner_edges: level_edges,
                cluster_trees,
                attempts,
            });
            for s in super_of.iter_mut() {
                *s = new_id[cluster[*s]];
            }
            super_count = next;
        }
        all_levels.push(levels);
    }

    Ok(WeightedSpanner {
        result: SpannerResult {
            edges: spanner.to_vec(),
            radii: first_radii.unwrap_or_default(),
            radii_ok: true,
            attempts: total_attempts,
        },
        decomposition,
        levels: all_levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Model};

    #[test]
    fn log_helpers_are_exact_at_powers() {
        assert_eq!(ceil_log(2.0, 8.0), 3);
        assert_eq!(ceil_log(2.0, 8.5), 4);
        assert_eq!(ceil_log(1.5, 1.0), 0);
        assert_eq!(category(2.0, 1.0), 1);
        assert_eq!(category(2.0, 1.99), 1);
        assert_eq!(category(2.0, 2.0), 2);
        assert_eq!(category(2.0, 8.0), 4);
    }

    #[test]
    fn contraction_exponent_tracks_eps() {
        assert_eq!(contraction_exponent(3, 0.25), 3);
        // 2^{-2} > 0.1, so 2 + ceil(log2 10) = 6.
        assert_eq!(contraction_exponent(2, 0.1), 6);
        assert!(libm::pow(2.0, -5.0) <= 0.1);
    }

    #[test]
    fn unit_weights_form_one_category() {
        let g = generate(Model::Grid { w: 4, h: 4 }, 0).unwrap();
        let d = decompose(&g, 3, 0.5, 3).unwrap();
        assert_eq!(d.lambda, 1);
        assert_eq!(d.scales.len(), 1);
        assert_eq!(d.scales[0].levels.len(), 1);
        assert_eq!(d.scales[0].levels[0].edges.len(), g.m());
    }

    #[test]
    fn narrow_weights_share_a_category() {
        let mut b = GraphBuilder::new(3);
        b.add_weighted_edge(0, 1, 1.0).unwrap();
        b.add_weighted_edge(1, 2, 1.2).unwrap();
        let d = decompose(&b.build().unwrap(), 3, 0.25, 3).unwrap();
        assert_eq!(d.edge_category, alloc::vec![1, 1]);
    }

    #[test]
    fn bad_parameters_rejected() {
        let g = generate(Model::Path { n: 3 }, 0).unwrap();
        assert!(decompose(&g, 3, 0.0, 3).is_err());
        assert!(decompose(&g, 3, 1.0, 3).is_err());
        assert!(decompose(&g, 0, 0.5, 3).is_err());
    }

    #[test]
    fn decomposition_partitions_edges() {
        let g = generate(Model::RandomWeighted { n: 80, p: 0.2, wmax: 1e4 }, 1).unwrap();
        let d = decompose(&g, 3, 0.25, 3).unwrap();
        let total: usize = d.scales.iter().flat_map(|s| &s.levels).map(|l| l.edges.len()).sum();
        assert_eq!(total, g.m());
        let base = 1.25f64;
        for s in &d.scales {
            for l in &s.levels {
                let lo = l.base_weight;
                for &id in &l.edges {
                    let w = g.weight(id);
                    assert!(w >= lo * (1.0 - 1e-12));
                    if l.category < d.lambda {
                        assert!(w < lo * base);
                    }
                }
            }
            for w in s.levels.windows(2) {
                assert!(w[1].base_weight / w[0].base_weight >= 27.0 * (1.0 - 1e-12));
            }
        }
    }

    #[test]
    fn weighted_path_keeps_every_edge() {
        let mut b = GraphBuilder::new(6);
        for (u, w) in [(0, 1.0), (1, 50.0), (2, 3.0), (3, 900.0), (4, 7.5)] {
            b.add_weighted_edge(u, u + 1, w).unwrap();
        }
        let g = b.build().unwrap();
        for seed in 0..10 {
            let s = build_weighted_spanner(&g, &WeightedParams::new(3, 0.25, seed)).unwrap();
            assert_eq!(s.result.edge_count(), g.m());
        }
    }
}
