//! `(2k-1)`-spanners from exponentially shifted broadcasts.
//!
//! Every vertex `u` draws `r_u ~ Exp(beta)` with `beta = ln(cn)/k` and
//! broadcasts it for `k` rounds. A vertex `x` that hears origin `u` at hop
//! distance `d` records `m_u(x) = r_u - d` together with the neighbor the
//! message came through. With `m(x)` the largest recorded value, `x` keeps
//! the edge towards every origin whose value is at least `m(x) - 1`.
//!
//! The broadcast runs as `k` synchronous relaxation rounds in which each
//! vertex forwards only its current best origin. If every `r_u < k`, the
//! selected edges form a `(2k-1)`-spanner.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::rng::{child_seed, streams, Substream};

/// Parameters of one exponential-shift construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpClusterParams {
    k: u32,
    c: f64,
    beta: f64,
    seed: u64,
    stream: u64,
}

impl ExpClusterParams {
    /// `beta` is derived as `ln(c * n) / k`.
    pub fn new(n: usize, k: u32, c: f64, seed: u64) -> Result<Self> {
        if k == 0 {
            return Err(invalid!("k must be at least 1"));
        }
        if !(c > 3.0 && c.is_finite()) {
            return Err(invalid!("c must be a finite value > 3, got {c}"));
        }
        let beta = libm::log(c * n.max(1) as f64) / k as f64;
        Ok(ExpClusterParams {
            k,
            c,
            beta,
            seed,
            stream: 0,
        })
    }

    /// Selects an independent family of radii under the same seed.
    pub fn with_stream(mut self, stream: u64) -> Self {
        self.stream = stream;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    fn substream(&self) -> Substream {
        Substream::new(self.seed, streams::RADII.wrapping_add(self.stream))
    }
}

/// Inverse transform of a uniform `u` in `(0, 1]` to `Exp(beta)`.
pub fn radius_from_uniform(u: f64, beta: f64) -> f64 {
    let x = -libm::log(u);
    if x > 0.0 {
        x / beta
    } else {
        0.0
    }
}

/// Per-vertex radii; `r_u` only depends on `(seed, stream, u)`.
pub fn sample_radii(params: &ExpClusterParams, n: usize) -> Vec<f64> {
    let sub = params.substream();
    (0..n)
        .map(|u| radius_from_uniform(sub.unit_open_closed(u as u64), params.beta))
        .collect()
}

/// A message as recorded by its receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub origin: usize,
    /// Neighbor the message arrived from; the receiver itself for its own value.
    pub via: usize,
    pub hops: u32,
    /// `r_origin - hops`.
    pub m: f64,
}

/// Broadcast outcome at one vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexState {
    pub best: Candidate,
    /// One entry per origin with `m >= best.m - 1`, ascending by origin.
    pub candidates: Vec<Candidate>,
}

/// Broadcast outcome at every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct BroadcastState {
    pub vertices: Vec<VertexState>,
    /// Largest candidate list held by any vertex at any time.
    pub peak_candidates: usize,
}

impl BroadcastState {
    /// Cluster of every vertex: the origin of its best message.
    pub fn cluster_of(&self) -> Vec<usize> {
        self.vertices.iter().map(|s| s.best.origin).collect()
    }
}

/// `a` beats `b` as a best message.
#[inline]
pub(crate) fn better(a_m: f64, a_origin: usize, b_m: f64, b_origin: usize) -> bool {
    a_m > b_m || (a_m == b_m && a_origin < b_origin)
}

/// Records a received message in a candidate list kept sorted by origin.
///
/// For each origin only the largest value survives; equal values keep the
/// smaller `via`. Returns the list length after insertion.
#[inline]
pub(crate) fn record(list: &mut Vec<Candidate>, msg: Candidate, floor: f64) -> usize {
    if msg.m < floor {
        return list.len();
    }
    match list.binary_search_by_key(&msg.origin, |c| c.origin) {
        Ok(i) => {
            let cur = &mut list[i];
            if msg.m > cur.m || (msg.m == cur.m && msg.via < cur.via) {
                *cur = msg;
            }
        }
        Err(i) => list.insert(i, msg),
    }
    list.len()
}

/// Runs the `k`-round broadcast of `radii` over the unweighted topology of `g`.
pub fn broadcast(g: &Graph, radii: &[f64], k: u32) -> BroadcastState {
    let n = g.n();
    assert_eq!(radii.len(), n, "one radius per vertex");
    let mut best: Vec<Candidate> = (0..n)
        .map(|x| Candidate {
            origin: x,
            via: x,
            hops: 0,
            m: radii[x],
        })
        .collect();
    let mut lists: Vec<Vec<Candidate>> = best.iter().map(|c| vec![*c]).collect();
    let mut peak = 1usize;
    let mut senders: Vec<usize> = (0..n).collect();
    let mut changed = vec![false; n];
    let mut outgoing: Vec<Candidate> = Vec::new();

    for _round in 1..=k {
        if senders.is_empty() {
            break;
        }
        // Snapshot what each sender forwards this round.
        outgoing.clear();
        outgoing.extend(senders.iter().map(|&v| best[v]));
        let mut next = Vec::new();
        for (&v, sent) in senders.iter().zip(&outgoing) {
            let hops = sent.hops + 1;
            let m = radii[sent.origin] - hops as f64;
            for &x in g.neighbors(v) {
                let msg = Candidate {
                    origin: sent.origin,
                    via: v,
                    hops,
                    m,
                };
                let len = record(&mut lists[x], msg, best[x].m - 1.0);
                peak = peak.max(len);
                if better(m, msg.origin, best[x].m, best[x].origin) {
                    best[x] = msg;
                    if !changed[x] {
                        changed[x] = true;
                        next.push(x);
                    }
                }
            }
        }
        next.sort_unstable();
        for &x in &next {
            changed[x] = false;
            let floor = best[x].m - 1.0;
            lists[x].retain(|c| c.m >= floor);
        }
        senders = next;
    }

    let vertices = best
        .into_iter()
        .zip(lists)
        .map(|(best, mut candidates)| {
            let floor = best.m - 1.0;
            candidates.retain(|c| c.m >= floor);
            VertexState { best, candidates }
        })
        .collect();
    BroadcastState {
        vertices,
        peak_candidates: peak,
    }
}

/// Edge ids `(x, via)` over all retained candidates.
pub fn select_edges(g: &Graph, state: &BroadcastState) -> EdgeSet {
    let mut set = EdgeSet::new(g.m());
    for (x, s) in state.vertices.iter().enumerate() {
        for c in &s.candidates {
            if c.via != x {
                let id = g.edge_id(x, c.via).expect("via is a neighbor");
                set.insert(id);
            }
        }
    }
    set
}

/// Output of a spanner construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SpannerResult {
    /// Ids of the selected edges in the input graph, ascending.
    pub edges: Vec<usize>,
    /// The radii of the successful (or last) attempt.
    pub radii: Vec<f64>,
    /// Every radius of the returned run was below `k`.
    pub radii_ok: bool,
    pub attempts: usize,
}

impl SpannerResult {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The spanner as a graph on the input's vertex set.
    pub fn to_graph(&self, g: &Graph) -> Graph {
        g.subgraph(self.edges.iter().copied())
    }
}

fn require_unweighted(g: &Graph) -> Result<()> {
    if g.is_weighted() {
        Err(invalid!(
            "weighted input: use the weighted spanner construction instead"
        ))
    } else {
        Ok(())
    }
}

/// One run of the construction, together with the broadcast state.
pub fn build_spanner_with_state(
    g: &Graph,
    params: &ExpClusterParams,
) -> Result<(SpannerResult, BroadcastState)> {
    require_unweighted(g)?;
    let radii = sample_radii(params, g.n());
    let k = params.k() as f64;
    let radii_ok = radii.iter().all(|&r| r < k);
    let state = broadcast(g, &radii, params.k());
    let edges = select_edges(g, &state).to_vec();
    Ok((
        SpannerResult {
            edges,
            radii,
            radii_ok,
            attempts: 1,
        },
        state,
    ))
}

/// One run of the construction.
pub fn build_spanner(g: &Graph, params: &ExpClusterParams) -> Result<SpannerResult> {
    build_spanner_with_state(g, params).map(|(r, _)| r)
}

/// Edge budget `(1+delta) (cn)^{1+1/k} / (c-1) - delta (n-1)` of the
/// retry wrapper.
pub fn edge_budget(n: usize, k: u32, c: f64, delta: f64) -> f64 {
    let n = n as f64;
    let k = k as f64;
    (1.0 + delta) * libm::pow(c * n, 1.0 + 1.0 / k) / (c - 1.0) - delta * (n - 1.0)
}

/// Upper bound on the expected number of attempts of the retry wrapper.
pub fn expected_attempts(c: f64, delta: f64) -> f64 {
    (1.0 + delta) / ((1.0 - 1.0 / c) * delta)
}

/// Options of [`build_spanner_guaranteed`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetryOptions {
    /// Give up after this many attempts; `None` means 64 times the expectation.
    pub max_attempts: Option<usize>,
}

impl Default for RetryOptions {
    fn default() -> Self {
        RetryOptions { max_attempts: None }
    }
}

/// Repeats the construction until all radii are below `k` and the edge
/// count fits [`edge_budget`]. Attempt `a` uses child seed `a` of `seed`,
/// so the first attempt equals [`build_spanner`] with `seed`.
pub fn build_spanner_guaranteed(
    g: &Graph,
    k: u32,
    c: f64,
    delta: f64,
    seed: u64,
    options: RetryOptions,
) -> Result<SpannerResult> {
    require_unweighted(g)?;
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(invalid!("delta must be a finite value > 0, got {delta}"));
    }
    let base = ExpClusterParams::new(g.n(), k, c, seed)?;
    let budget = edge_budget(g.n(), k, c, delta);
    let cap = options
        .max_attempts
        .unwrap_or_else(|| 64 * libm::ceil(expected_attempts(c, delta)) as usize);
    let (mut radius_failures, mut size_failures, mut smallest) = (0usize, 0usize, usize::MAX);
    for attempt in 0..cap {
        let params = base.with_seed(child_seed(seed, attempt as u64));
        let mut run = build_spanner(g, &params)?;
        if !run.radii_ok {
            radius_failures += 1;
            continue;
        }
        smallest = smallest.min(run.edge_count());
        if run.edge_count() as f64 > budget {
            size_failures += 1;
            continue;
        }
        run.attempts = attempt + 1;
        return Ok(run);
    }
    Err(Error::GaveUp {
        attempts: cap,
        reason: format!(
            "{radius_failures} runs had a radius >= k, {size_failures} exceeded the \
             edge budget {budget:.1} (smallest valid run: {})",
            if smallest == usize::MAX {
                alloc::string::String::from("none")
            } else {
                format!("{smallest} edges")
            }
        ),
    })
}

/// Named parameter regimes of the retry wrapper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preset {
    /// `c = k`, `delta = 1/k`.
    LinearTime,
    /// `c = 3/eps`, `delta = 2/eps`.
    DistributedEps(f64),
    /// `c = k`, `delta = 2/eps`; needs `k >= ln n` and `2/k < eps < 1`.
    UltraSparse(f64),
}

/// `(c, delta)` for a preset.
///
/// Presets with `c = k` additionally need `k > 3`, the range where the
/// construction's `c > 3` requirement holds.
pub fn preset(p: Preset, n: usize, k: u32) -> Result<(f64, f64)> {
    let kf = k as f64;
    match p {
        Preset::LinearTime => {
            if k <= 3 {
                return Err(invalid!("linear-time preset sets c = k and needs k >= 4, got k = {k}"));
            }
            Ok((kf, 1.0 / kf))
        }
        Preset::DistributedEps(eps) => {
            if !(eps > 0.0 && eps < 1.0) {
                return Err(invalid!("distributed preset needs 0 < eps < 1, got {eps}"));
            }
            Ok((3.0 / eps, 2.0 / eps))
        }
        Preset::UltraSparse(eps) => {
            let ln_n = libm::log(n.max(1) as f64);
            if kf < ln_n {
                return Err(invalid!(
                    "ultra-sparse preset needs k >= ln n = {ln_n:.3}, got k = {k}"
                ));
            }
            if !(2.0 / kf < eps && eps < 1.0) {
                return Err(invalid!(
                    "ultra-sparse preset needs 2/k = {:.3} < eps < 1, got {eps}",
                    2.0 / kf
                ));
            }
            if k <= 3 {
                return Err(invalid!("ultra-sparse preset sets c = k and needs k >= 4, got k = {k}"));
            }
            Ok((kf, 2.0 / eps))
        }
    }
}

/// Edge count of the ultra-sparse regime, `n (1 + factor * ln n / (eps k))`.
pub fn ultra_sparse_target(n: usize, k: u32, eps: f64, factor: f64) -> f64 {
    let nf = n as f64;
    nf * (1.0 + factor * libm::log(nf) / (eps * k as f64))
}

/// Moore-bound edge count `n^{1 + 2/(g-2)}` for girth `g > 2`, for reports.
pub fn moore_bound(n: usize, girth: u32) -> Option<f64> {
    (girth > 2).then(|| libm::pow(n as f64, 1.0 + 2.0 / (girth as f64 - 2.0)))
}
