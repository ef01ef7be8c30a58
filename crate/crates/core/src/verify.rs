//! Exact stretch oracles, Monte Carlo checks, trial aggregation and
//! approximate source-to-all distances.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::error::{invalid, Result};
use crate::graph::{dijkstra_into, DijkstraScratch, Graph, INF_WEIGHT};
use crate::mult::{self, ExpClusterParams, RetryOptions};
use crate::nearadd::{self, Variant};
use crate::rng::{child_seed, sequential, streams, unit_open_closed};
use crate::weighted::{self, WeightedParams};

/// Relative slack for floating point comparisons of path lengths.
const TOL: f64 = 1e-9;

/// Single-source distances; BFS on unweighted graphs, Dijkstra otherwise.
#[derive(Debug, Clone)]
pub struct Sssp {
    dist: Vec<f64>,
    queue: Vec<usize>,
    heap: DijkstraScratch,
}

impl Sssp {
    pub fn new(n: usize) -> Self {
        Sssp {
            dist: vec![INF_WEIGHT; n],
            queue: Vec::with_capacity(n),
            heap: DijkstraScratch::default(),
        }
    }

    pub fn run(&mut self, g: &Graph, s: usize) -> &[f64] {
        if g.is_weighted() {
            dijkstra_into(g, s, &mut self.dist, &mut self.heap);
            return &self.dist;
        }
        self.dist.iter_mut().for_each(|d| *d = INF_WEIGHT);
        self.queue.clear();
        self.dist[s] = 0.0;
        self.queue.push(s);
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            let du = self.dist[u] + 1.0;
            for &v in g.neighbors(u) {
                if self.dist[v] == INF_WEIGHT {
                    self.dist[v] = du;
                    self.queue.push(v);
                }
            }
        }
        &self.dist
    }
}

/// All-pairs distances, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut d = Vec::with_capacity(n * n);
        let mut s = Sssp::new(n);
        for u in 0..n {
            d.extend_from_slice(s.run(g, u));
        }
        DistanceMatrix { n, d }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[f64] {
        &self.d[u * self.n..(u + 1) * self.n]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub u: usize,
    pub v: usize,
    pub d_g: f64,
    pub d_h: f64,
    pub bound: f64,
}

/// At most this many violations are kept; all are counted.
pub const MAX_LISTED_VIOLATIONS: usize = 64;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct StretchReport {
    pub pairs_checked: usize,
    /// Largest `d_H / d_G` over connected pairs with `d_G > 0`.
    pub max_stretch: f64,
    pub worst_pair: Option<(usize, usize)>,
    /// Largest `d_H - alpha d_G`, the multiplicative slack of the check.
    pub max_additive_residual: f64,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
}

impl StretchReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn record(&mut self, u: usize, v: usize, d_g: f64, d_h: f64, alpha: f64, bound: f64, lower: bool) {
        self.pairs_checked += 1;
        if d_g > 0.0 && d_g.is_finite() {
            let s = d_h / d_g;
            if s > self.max_stretch || self.worst_pair.is_none() {
                self.max_stretch = s;
                self.worst_pair = Some((u, v));
            }
            let res = d_h - alpha * d_g;
            if res > self.max_additive_residual || self.pairs_checked == 1 {
                self.max_additive_residual = res;
            }
        }
        let over = if d_g.is_finite() {
            !(d_h <= bound * (1.0 + TOL) + TOL)
        } else {
            d_h.is_finite()
        };
        let under = lower && d_h < d_g * (1.0 - TOL) - TOL;
        if over || under {
            self.violation_count += 1;
            if self.violations.len() < MAX_LISTED_VIOLATIONS {
                self.violations.push(Violation { u, v, d_g, d_h, bound });
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Only `(u, v) in E(G)`; enough for subgraphs.
    EdgesOnly,
    AllPairs,
}

fn check_subgraph(g: &Graph, h: &Graph) -> Result<()> {
    if g.n() != h.n() {
        return Err(invalid!("vertex counts differ: {} vs {}", g.n(), h.n()));
    }
    for (id, e) in h.edges().iter().enumerate() {
        match g.edge_id(e.u, e.v) {
            None => return Err(invalid!("edge ({}, {}) is not an edge of the graph", e.u, e.v)),
            Some(gid) if (g.weight(gid) - h.weight(id)).abs() > TOL * g.weight(gid) => {
                return Err(invalid!("edge ({}, {}) changed weight", e.u, e.v))
            }
            _ => {}
        }
    }
    Ok(())
}

/// Checks `d_H <= alpha d_G` for a subgraph `h` of `g`.
pub fn check_multiplicative(g: &Graph, h: &Graph, alpha: f64, mode: CheckMode) -> Result<StretchReport> {
    check_subgraph(g, h)?;
    let n = g.n();
    let mut report = StretchReport::default();
    let mut sh = Sssp::new(n);
    match mode {
        CheckMode::EdgesOnly => {
            for u in 0..n {
                if !g.neighbors(u).iter().any(|&v| v > u) {
                    continue;
                }
                let dh = sh.run(h, u).to_vec();
                for (v, id) in g.incident(u) {
                    if v > u {
                        let w = g.weight(id);
                        report.record(u, v, w, dh[v], alpha, alpha * w, false);
                    }
                }
            }
        }
        CheckMode::AllPairs => {
            let mut sg = Sssp::new(n);
            for u in 0..n {
                let dg = sg.run(g, u).to_vec();
                let dh = sh.run(h, u);
                for v in u + 1..n {
                    report.record(u, v, dg[v], dh[v], alpha, alpha * dg[v], false);
                }
            }
        }
    }
    Ok(report)
}

/// Checks `d_H <= (1+eps) d_G + beta` for all pairs, and `d_H >= d_G` when
/// `lower` is set. `dg` may hold precomputed distances of `g`.
pub fn check_near_additive(
    g: &Graph,
    dg: Option<&DistanceMatrix>,
    h: &Graph,
    eps: f64,
    beta: f64,
    lower: bool,
) -> Result<StretchReport> {
    if g.n() != h.n() {
        return Err(invalid!("vertex counts differ: {} vs {}", g.n(), h.n()));
    }
    if let Some(m) = dg {
        if m.n() != g.n() {
            return Err(invalid!("distance matrix is for {} vertices", m.n()));
        }
    }
    let n = g.n();
    let alpha = 1.0 + eps;
    let mut report = StretchReport::default();
    let mut sg = Sssp::new(n);
    let mut sh = Sssp::new(n);
    let mut row = Vec::new();
    for u in 0..n {
        let dgu: &[f64] = match dg {
            Some(m) => m.row(u),
            None => {
                row.clear();
                row.extend_from_slice(sg.run(g, u));
                &row
            }
        };
        let dh = sh.run(h, u);
        for v in u + 1..n {
            report.record(u, v, dgu[v], dh[v], alpha, alpha * dgu[v] + beta, lower);
        }
    }
    Ok(report)
}

/// Wilson score interval for `successes / trials` at `z` standard deviations.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * libm::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // The interval contains p exactly; min/max only absorb rounding.
    ((center - half).max(0.0).min(p), (center + half).min(1.0).max(p))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailEstimate {
    pub t: usize,
    pub empirical: f64,
    /// 95% Wilson interval.
    pub interval: (f64, f64),
    /// `(1 - e^{-beta})^{t-1}`.
    pub closed_form: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderStatistics {
    pub beta: f64,
    pub trials: usize,
    /// Position `t - 1` holds `Pr[|I| >= t]`, for `t = 1..=shifts.len()`.
    pub tails: Vec<TailEstimate>,
}

/// Estimates `Pr[|I| >= t]` where `I` collects the indices with
/// `r_i - d_i >= max_j (r_j - d_j) - 1` for `r_i ~ Exp(beta)`.
pub fn mc_order_statistics(beta: f64, shifts: &[f64], trials: usize, seed: u64) -> Result<OrderStatistics> {
    if trials < 10_000 {
        return Err(invalid!("need at least 10000 trials, got {trials}"));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(invalid!("beta must be positive, got {beta}"));
    }
    if shifts.is_empty() {
        return Err(invalid!("need at least one shift"));
    }
    let n = shifts.len();
    let mut rng = sequential(seed, streams::MONTE_CARLO);
    let mut at_least = vec![0u64; n + 1];
    let mut m = vec![0.0; n];
    for _ in 0..trials {
        let mut best = f64::NEG_INFINITY;
        for (i, d) in shifts.iter().enumerate() {
            let r = -libm::log(unit_open_closed(rng.next_u64())) / beta;
            m[i] = r - d;
            best = best.max(m[i]);
        }
        let size = m.iter().filter(|&&x| x >= best - 1.0).count();
        at_least[size] += 1;
    }
    // Suffix sums turn exact counts into tail counts.
    for t in (1..n).rev() {
        at_least[t] += at_least[t + 1];
    }
    let q = 1.0 - libm::exp(-beta);
    let tails = (1..=n)
        .map(|t| TailEstimate {
            t,
            empirical: at_least[t] as f64 / trials as f64,
            interval: wilson_interval(at_least[t], trials as u64, 1.96),
            closed_form: libm::pow(q, (t - 1) as f64),
        })
        .collect();
    Ok(OrderStatistics { beta, trials, tails })
}

/// A construction to repeat in [`run_trials`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BuilderSpec {
    Mult { k: u32, c: f64 },
    MultGuaranteed { k: u32, c: f64, delta: f64 },
    Weighted { k: u32, eps: f64 },
    NearAdditive { kappa: u32, eps: f64, rho: f64, variant: Variant },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrialStats {
    pub trials: usize,
    /// Output size of every successful trial.
    pub edge_counts: Vec<usize>,
    pub radii_ok: Vec<bool>,
    /// Stretch check outcome per successful trial when requested.
    pub stretch_ok: Vec<bool>,
    /// `(trial, message)` for failed trials.
    pub errors: Vec<(usize, String)>,
}

impl TrialStats {
    pub fn mean_edges(&self) -> f64 {
        mean(self.edge_counts.iter().map(|&x| x as f64))
    }

    /// Unbiased sample variance.
    pub fn variance_edges(&self) -> f64 {
        let k = self.edge_counts.len();
        if k < 2 {
            return 0.0;
        }
        let mu = self.mean_edges();
        self.edge_counts
            .iter()
            .map(|&x| (x as f64 - mu) * (x as f64 - mu))
            .sum::<f64>()
            / (k - 1) as f64
    }

    /// Empirical quantile by nearest rank, `q` in `[0, 1]`.
    pub fn quantile_edges(&self, q: f64) -> Option<usize> {
        if self.edge_counts.is_empty() {
            return None;
        }
        let mut v = self.edge_counts.clone();
        v.sort_unstable();
        let idx = libm::ceil(q.clamp(0.0, 1.0) * v.len() as f64) as usize;
        Some(v[idx.saturating_sub(1).min(v.len() - 1)])
    }

    pub fn radii_ok_rate(&self) -> f64 {
        mean(self.radii_ok.iter().map(|&b| b as u8 as f64))
    }

    pub fn stretch_pass_rate(&self) -> f64 {
        mean(self.stretch_ok.iter().map(|&b| b as u8 as f64))
    }
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (s, c) = xs.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    if c == 0 {
        0.0
    } else {
        s / c as f64
    }
}

struct TrialOutcome {
    size: usize,
    radii_ok: bool,
    stretch_ok: Option<bool>,
}

fn one_trial(g: &Graph, spec: &BuilderSpec, seed: u64, check: bool) -> Result<TrialOutcome> {
    match *spec {
        BuilderSpec::Mult { k, c } => {
            let p = ExpClusterParams::new(g.n(), k, c, seed)?;
            let r = mult::build_spanner(g, &p)?;
            let stretch_ok = if check && r.radii_ok {
                let h = r.to_graph(g);
                Some(check_multiplicative(g, &h, (2 * k - 1) as f64, CheckMode::EdgesOnly)?.passed())
            } else {
                None
            };
            Ok(TrialOutcome {
                size: r.edge_count(),
                radii_ok: r.radii_ok,
                stretch_ok,
            })
        }
        BuilderSpec::MultGuaranteed { k, c, delta } => {
            let r = mult::build_spanner_guaranteed(g, k, c, delta, seed, RetryOptions::default())?;
            let stretch_ok = if check {
                let h = r.to_graph(g);
                Some(check_multiplicative(g, &h, (2 * k - 1) as f64, CheckMode::EdgesOnly)?.passed())
            } else {
                None
            };
            Ok(TrialOutcome {
                size: r.edge_count(),
                radii_ok: r.radii_ok,
                stretch_ok,
            })
        }
        BuilderSpec::Weighted { k, eps } => {
            let w = weighted::build_weighted_spanner(g, &WeightedParams::new(k, eps, seed))?;
            let stretch_ok = if check {
                let h = w.result.to_graph(g);
                Some(check_multiplicative(g, &h, w.stretch_bound(), CheckMode::EdgesOnly)?.passed())
            } else {
                None
            };
            Ok(TrialOutcome {
                size: w.result.edge_count(),
                radii_ok: w.result.radii_ok,
                stretch_ok,
            })
        }
        BuilderSpec::NearAdditive { kappa, eps, rho, variant } => {
            let r = nearadd::build(g, kappa, eps, rho, variant, seed)?;
            let stretch_ok = if check {
                let h = r.to_graph(g);
                let lower = variant == Variant::Emulator;
                Some(check_near_additive(g, None, &h, eps, r.schedule.beta_bound(), lower)?.passed())
            } else {
                None
            };
            Ok(TrialOutcome {
                size: r.size(),
                radii_ok: true,
                stretch_ok,
            })
        }
    }
}

/// Runs `trials` independent builds; trial `t` uses `child_seed(seed, t)`.
/// A failing trial is recorded in `errors` and does not stop the run.
pub fn run_trials(g: &Graph, spec: &BuilderSpec, trials: usize, seed: u64, check_stretch: bool) -> TrialStats {
    let mut stats = TrialStats {
        trials,
        ..TrialStats::default()
    };
    for t in 0..trials {
        match one_trial(g, spec, child_seed(seed, t as u64), check_stretch) {
            Ok(o) => {
                stats.edge_counts.push(o.size);
                stats.radii_ok.push(o.radii_ok);
                if let Some(s) = o.stretch_ok {
                    stats.stretch_ok.push(s);
                }
            }
            Err(e) => stats.errors.push((t, e.to_string())),
        }
    }
    stats
}

/// Ceiling of `w` to a power of `base`, for `w >= 1`.
pub fn round_up_to_power(w: f64, base: f64) -> f64 {
    if w <= 1.0 {
        return 1.0;
    }
    let mut t = libm::ceil(libm::log(w) / libm::log(base)).max(0.0);
    while t > 0.0 && libm::pow(base, t - 1.0) >= w {
        t -= 1.0;
    }
    while libm::pow(base, t) < w {
        t += 1.0;
    }
    libm::pow(base, t)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxDistances {
    pub sources: Vec<usize>,
    /// `table[i][v]` estimates `d_G(sources[i], v)`.
    pub table: Vec<Vec<f64>>,
    pub eps: f64,
    /// Additive term of the emulator.
    pub beta: f64,
    pub rounded: bool,
    pub emulator_edges: usize,
    /// Distinct edge weights after rounding.
    pub distinct_weights: usize,
}

impl ApproxDistances {
    /// Upper end of the guarantee for true distance `d`.
    pub fn upper_bound(&self, d: f64) -> f64 {
        let a = 1.0 + self.eps;
        if self.rounded {
            a * a * d + a * self.beta
        } else {
            a * d + self.beta
        }
    }

    /// Entries outside `[d_G, upper_bound(d_G)]`, checked by BFS from each
    /// source: `(source, target, estimate, exact)`.
    pub fn certificate_violations(&self, g: &Graph) -> Vec<(usize, usize, f64, f64)> {
        let mut out = Vec::new();
        let mut s = Sssp::new(g.n());
        for (i, &src) in self.sources.iter().enumerate() {
            let exact = s.run(g, src);
            for (v, (&est, &d)) in self.table[i].iter().zip(exact).enumerate() {
                let ok = if d.is_finite() {
                    est >= d * (1.0 - TOL) && est <= self.upper_bound(d) * (1.0 + TOL) + TOL
                } else {
                    !est.is_finite()
                };
                if !ok {
                    out.push((src, v, est, d));
                }
            }
        }
        out
    }
}

/// `(1+eps, beta)`-approximate distances from every source, by shortest
/// paths in an emulator whose weights are rounded up to powers of `1+eps`.
pub fn approx_distances(
    g: &Graph,
    sources: &[usize],
    kappa: u32,
    eps: f64,
    rho: f64,
    seed: u64,
    rounding: bool,
) -> Result<ApproxDistances> {
    if let Some(&s) = sources.iter().find(|&&s| s >= g.n()) {
        return Err(invalid!("source {s} out of range for {} vertices", g.n()));
    }
    let r = nearadd::build(g, kappa, eps, rho, Variant::Emulator, seed)?;
    let emu = r.emulator.as_ref().expect("emulator variant");
    let base = 1.0 + eps;
    let mut h = emu.to_graph();
    if rounding {
        h = h.map_weights(|_, w| round_up_to_power(w, base))?;
    }
    let mut distinct: Vec<f64> = h.weights().map(|w| w.to_vec()).unwrap_or_default();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    let mut sssp = Sssp::new(g.n());
    let table = sources.iter().map(|&s| sssp.run(&h, s).to_vec()).collect();
    Ok(ApproxDistances {
        sources: sources.to_vec(),
        table,
        eps,
        beta: r.schedule.beta_bound(),
        rounded: rounding,
        emulator_edges: emu.edges.len(),
        distinct_weights: distinct.len(),
    })
}

/// Observed statistic and its one-sided limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    /// Standard error of `value`.
    pub sigma: f64,
    pub limit: f64,
}

impl Estimate {
    pub fn within(&self, z: f64) -> bool {
        self.value <= self.limit + z * self.sigma
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateOutcome {
    pub passed: bool,
    pub trials_used: usize,
    pub estimate: Estimate,
    pub reran: bool,
}

/// Accepts when `value <= limit + 3 sigma`; otherwise reruns once with four
/// times the trials and decides on that.
pub fn statistical_gate(trials: usize, mut run: impl FnMut(usize) -> Estimate) -> GateOutcome {
    let first = run(trials);
    if first.within(3.0) {
        return GateOutcome {
            passed: true,
            trials_used: trials,
            estimate: first,
            reran: false,
        };
    }
    let second = run(4 * trials);
    GateOutcome {
        passed: second.within(3.0),
        trials_used: 4 * trials,
        estimate: second,
        reran: true,
    }
}
