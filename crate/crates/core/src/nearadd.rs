//! Near-additive spanners and emulators by superclustering and interconnection.
//!
//! Phase `i` samples clusters of the current partition with probability
//! `1/deg_i`, grows superclusters around the sampled ones with a BFS forest of
//! depth `delta_i`, and joins every cluster left out to all cluster centers
//! within `delta_i / 2` by shortest paths. A final phase only interconnects.
//! The emulator variant inserts one weighted edge per path instead.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::graph::{bfs_bounded, BfsScratch, EdgeSet, Graph, GraphBuilder};
use crate::rng::{child_seed, streams, Substream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Basic,
    Improved,
    Emulator,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Basic => "basic",
            Variant::Improved => "improved",
            Variant::Emulator => "emulator",
        }
    }
}

impl core::str::FromStr for Variant {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "basic" => Ok(Variant::Basic),
            "improved" => Ok(Variant::Improved),
            "emulator" => Ok(Variant::Emulator),
            _ => Err(invalid!("unknown variant {s:?} (basic, improved, emulator)")),
        }
    }
}

/// `R_0 .. R_count-1` for `R_0 = 0`, `R_{i+1} = (1/eps)^i + 5 R_i`.
pub fn radius_sequence(eps: f64, count: usize) -> Vec<f64> {
    let mut r = Vec::with_capacity(count);
    let mut cur = 0.0;
    for i in 0..count {
        r.push(cur);
        cur = libm::pow(1.0 / eps, i as f64) + 5.0 * cur;
    }
    r
}

/// `4 * sum_{j=1}^{ell} R_j 2^{ell-j}`.
pub fn additive_bound(eps: f64, ell: usize) -> f64 {
    let r = radius_sequence(eps, ell + 1);
    (1..=ell)
        .map(|j| 4.0 * r[j] * libm::pow(2.0, (ell - j) as f64))
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSchedule {
    pub n: usize,
    pub kappa: u32,
    pub eps_user: f64,
    /// Internal `eps = eps_user / (32 ell)`.
    pub eps: f64,
    pub rho: f64,
    pub variant: Variant,
    /// Only meaningful for [`Variant::Improved`].
    pub a: f64,
    pub i0: usize,
    pub i1: usize,
    pub ell: usize,
    /// `deg[i]` for phases `0..=ell`; the concluding phase reuses `n^rho`.
    pub deg: Vec<f64>,
    /// `delta[i] = (1/eps)^i + 4 R_i` for `0..=ell`.
    pub delta: Vec<f64>,
    /// `radius[i] = R_i` for `0..=ell+1`.
    pub radius: Vec<f64>,
    /// False when `kappa` exceeds the range the size analysis assumes.
    pub kappa_within_bound: bool,
}

impl PhaseSchedule {
    pub fn sample_probability(&self, i: usize) -> f64 {
        let d = self.deg[i];
        if d <= 1.0 {
            1.0
        } else {
            1.0 / d
        }
    }

    fn saturate(&self, x: f64) -> u64 {
        let n = self.n as u64;
        if x >= n as f64 {
            n
        } else {
            libm::floor(x) as u64
        }
    }

    pub fn supercluster_depth(&self, i: usize) -> u64 {
        self.saturate(self.delta[i])
    }

    pub fn interconnect_depth(&self, i: usize) -> u64 {
        if i == 0 {
            1
        } else {
            self.saturate(self.delta[i] / 2.0)
        }
    }

    /// Visitor cap `4 ln n deg_i` of the interconnection step.
    pub fn visitor_cap(&self, i: usize) -> f64 {
        4.0 * libm::log((self.n.max(2)) as f64) * self.deg[i].max(1.0)
    }

    /// `4 * sum_{j=1}^{ell} R_j 2^{ell-j}` at the internal `eps`.
    pub fn beta_bound(&self) -> f64 {
        additive_bound(self.eps, self.ell)
    }

    /// Number of phases including the concluding one.
    pub fn phases(&self) -> usize {
        self.ell + 1
    }
}

fn log2(x: f64) -> f64 {
    libm::log2(x)
}

/// Stage boundaries and degree sequence without the distance part.
fn stages(n: usize, kappa: u32, rho: f64, variant: Variant) -> (f64, usize, usize, Vec<f64>) {
    let nf = n as f64;
    let k = kappa as f64;
    let pow = |e: f64| libm::pow(nf, e);
    match variant {
        Variant::Basic => {
            let i0 = libm::floor(log2(k * rho)).max(0.0) as usize;
            let extra = libm::ceil((k + 1.0) / (k * rho)) as usize;
            let i1 = (i0 + extra).saturating_sub(2).max(i0);
            let mut deg: Vec<f64> = (0..=i0).map(|i| pow(libm::pow(2.0, i as f64) / k)).collect();
            deg.resize(i1 + 2, pow(rho));
            (2.0, i0, i1, deg)
        }
        Variant::Improved => {
            let a = if kappa >= 16 { log2(log2(k)) } else { 2.0 };
            let i0 = libm::floor(log2(a * k * rho))
                .min(libm::floor(k * rho))
                .max(0.0) as usize;
            let i1 = i0 + libm::floor(1.0 / rho) as usize;
            let mut deg: Vec<f64> = (0..=i0)
                .map(|i| pow((libm::pow(2.0, i as f64) - 1.0) / (a * k) + 1.0 / k))
                .collect();
            deg.push(pow(rho / 2.0));
            deg.resize(i1 + 2, pow(rho));
            (a, i0, i1, deg)
        }
        Variant::Emulator => {
            let i0 = libm::floor(log2(k * rho)).max(0.0) as usize;
            let i1 = i0 + libm::floor(1.0 / rho) as usize;
            let mut deg: Vec<f64> = (0..=i0)
                .map(|i| {
                    let t = libm::pow(2.0, i as f64);
                    pow(t / k) / libm::pow(2.0, t - 1.0)
                })
                .collect();
            deg.push(pow(rho / 2.0));
            deg.resize(i1 + 2, pow(rho));
            (2.0, i0, i1, deg)
        }
    }
}

/// Schedule for `n` vertices; `eps_user` is the target multiplicative slack.
pub fn make_schedule(
    n: usize,
    kappa: u32,
    eps_user: f64,
    rho: f64,
    variant: Variant,
) -> Result<PhaseSchedule> {
    if kappa < 2 {
        return Err(invalid!("kappa must be at least 2, got {kappa}"));
    }
    if !(eps_user > 0.0 && eps_user <= 1.0) {
        return Err(invalid!("eps must lie in (0, 1], got {eps_user}"));
    }
    let k = kappa as f64;
    if !(rho * k >= 1.0 - 1e-12 && rho <= 0.5) {
        return Err(invalid!("rho must lie in [1/kappa, 1/2], got {rho} with kappa {kappa}"));
    }
    let (a, i0, i1, deg) = stages(n, kappa, rho, variant);
    let ell = i1 + 1;
    let eps = eps_user / (32.0 * ell as f64);
    with_internal_eps(n, kappa, eps_user, eps, rho, variant, (a, i0, i1, deg))
}

/// Same stages as [`make_schedule`] but with the internal `eps` given
/// directly, skipping the rescaling.
pub fn make_schedule_unscaled(
    n: usize,
    kappa: u32,
    eps: f64,
    rho: f64,
    variant: Variant,
) -> Result<PhaseSchedule> {
    if kappa < 2 {
        return Err(invalid!("kappa must be at least 2, got {kappa}"));
    }
    if !(eps > 0.0 && eps < 0.1) {
        return Err(invalid!("internal eps must lie in (0, 1/10), got {eps}"));
    }
    if !(rho * kappa as f64 >= 1.0 - 1e-12 && rho <= 0.5) {
        return Err(invalid!("rho must lie in [1/kappa, 1/2], got {rho} with kappa {kappa}"));
    }
    let st = stages(n, kappa, rho, variant);
    let ell = st.2 + 1;
    let eps_user = eps * 32.0 * ell as f64;
    with_internal_eps(n, kappa, eps_user, eps, rho, variant, st)
}

fn with_internal_eps(
    n: usize,
    kappa: u32,
    eps_user: f64,
    eps: f64,
    rho: f64,
    variant: Variant,
    (a, i0, i1, deg): (f64, usize, usize, Vec<f64>),
) -> Result<PhaseSchedule> {
    let ell = i1 + 1;
    let radius = radius_sequence(eps, ell + 2);
    let delta: Vec<f64> = (0..=ell)
        .map(|i| libm::pow(1.0 / eps, i as f64) + 4.0 * radius[i])
        .collect();
    let logn = log2(n.max(2) as f64);
    let kappa_within_bound = match variant {
        Variant::Emulator => kappa as f64 <= logn / 4.0,
        _ => {
            let lll = log2(log2(logn).max(1.0)).max(0.0);
            kappa as f64 <= logn / (log2(1.0 / eps) + log2(1.0 / rho) + lll)
        }
    };
    Ok(PhaseSchedule {
        n,
        kappa,
        eps_user,
        eps,
        rho,
        variant,
        a,
        i0,
        i1,
        ell,
        deg,
        delta,
        radius,
        kappa_within_bound,
    })
}

/// Edge of a cluster tree; `weight` is 1 for graph edges and the hop
/// distance for emulator edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Link {
    pub u: usize,
    pub v: usize,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub center: usize,
    /// Ascending.
    pub members: Vec<usize>,
    pub tree: Vec<Link>,
}

impl Cluster {
    fn singleton(v: usize) -> Self {
        Cluster {
            center: v,
            members: vec![v],
            tree: Vec::new(),
        }
    }

    /// Largest tree distance from the center to a member, or `None` if some
    /// member is not connected to the center by the tree.
    pub fn tree_radius(&self) -> Option<u64> {
        let mut adj: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
        for l in &self.tree {
            adj.entry(l.u).or_default().push((l.v, l.weight));
            adj.entry(l.v).or_default().push((l.u, l.weight));
        }
        let mut dist: BTreeMap<usize, u64> = BTreeMap::new();
        let mut heap = alloc::collections::BinaryHeap::new();
        dist.insert(self.center, 0);
        heap.push(core::cmp::Reverse((0u64, self.center)));
        while let Some(core::cmp::Reverse((d, x))) = heap.pop() {
            if dist.get(&x).is_some_and(|&best| best < d) {
                continue;
            }
            for &(y, w) in adj.get(&x).map(|v| v.as_slice()).unwrap_or(&[]) {
                let nd = d + w;
                if dist.get(&y).is_none_or(|&best| nd < best) {
                    dist.insert(y, nd);
                    heap.push(core::cmp::Reverse((nd, y)));
                }
            }
        }
        self.members
            .iter()
            .map(|m| dist.get(m).copied())
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }
}

/// The partition of one phase, over the vertices not yet left unclustered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterPartition {
    pub phase: usize,
    pub clusters: Vec<Cluster>,
}

impl ClusterPartition {
    pub fn singletons(n: usize) -> Self {
        ClusterPartition {
            phase: 0,
            clusters: (0..n).map(Cluster::singleton).collect(),
        }
    }

    /// Cluster index of each vertex.
    pub fn membership(&self, n: usize) -> Vec<Option<usize>> {
        let mut m = vec![None; n];
        for (ci, c) in self.clusters.iter().enumerate() {
            for &v in &c.members {
                m[v] = Some(ci);
            }
        }
        m
    }

    /// Largest [`Cluster::tree_radius`], `None` if a tree is broken.
    pub fn radius(&self) -> Option<u64> {
        self.clusters
            .iter()
            .try_fold(0, |acc, c| c.tree_radius().map(|r| acc.max(r)))
    }
}

/// Clusters left unclustered at each phase, concluding phase last.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UnclusteredRecord {
    pub phases: Vec<Vec<Cluster>>,
}

impl UnclusteredRecord {
    /// Whether the recorded clusters cover every vertex exactly once.
    pub fn is_partition(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for c in self.phases.iter().flatten() {
            for &v in &c.members {
                if v >= n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        seen.iter().all(|&s| s)
    }
}

pub struct SuperclusterOutcome {
    pub next: ClusterPartition,
    /// Indices (into the input partition) of clusters that joined nothing.
    pub unclustered: Vec<usize>,
    /// Indices of sampled clusters.
    pub sampled: Vec<usize>,
    pub forest_edges: Vec<usize>,
    /// One link per joined cluster from its new center.
    pub virtual_links: Vec<Link>,
}

/// Samples clusters with probability `prob` and merges every unsampled
/// cluster whose center is within `depth` of a sampled center into the
/// supercluster of its BFS forest root. `emulate` makes cluster trees use
/// virtual links instead of forest paths.
pub fn supercluster(
    g: &Graph,
    partition: &ClusterPartition,
    prob: f64,
    depth: u64,
    sampler: &Substream,
    emulate: bool,
) -> SuperclusterOutcome {
    let sampled: Vec<usize> = partition
        .clusters
        .iter()
        .enumerate()
        .filter(|(_, c)| prob >= 1.0 || sampler.unit_closed_open(c.center as u64) < prob)
        .map(|(i, _)| i)
        .collect();
    let next_phase = partition.phase + 1;
    if sampled.is_empty() {
        return SuperclusterOutcome {
            next: ClusterPartition {
                phase: next_phase,
                clusters: Vec::new(),
            },
            unclustered: (0..partition.clusters.len()).collect(),
            sampled,
            forest_edges: Vec::new(),
            virtual_links: Vec::new(),
        };
    }
    let centers: Vec<usize> = sampled.iter().map(|&i| partition.clusters[i].center).collect();
    let forest = bfs_bounded(g, &centers, depth).expect("sampled centers are valid sources");

    let mut slot_of_root = BTreeMap::new();
    let mut next: Vec<Cluster> = Vec::with_capacity(sampled.len());
    for &i in &sampled {
        slot_of_root.insert(partition.clusters[i].center, next.len());
        next.push(partition.clusters[i].clone());
    }
    let mut is_sampled = vec![false; partition.clusters.len()];
    for &i in &sampled {
        is_sampled[i] = true;
    }
    let mut forest_edges = EdgeSet::new(g.m());
    let mut virtual_links = Vec::new();
    let mut unclustered = Vec::new();
    for (ci, c) in partition.clusters.iter().enumerate() {
        if is_sampled[ci] {
            continue;
        }
        let Some(root) = forest.root[c.center] else {
            unclustered.push(ci);
            continue;
        };
        let target = &mut next[slot_of_root[&root]];
        target.members.extend_from_slice(&c.members);
        target.tree.extend_from_slice(&c.tree);
        let path = forest.path_to_root(c.center);
        for w in path.windows(2) {
            forest_edges.insert(g.edge_id(w[0], w[1]).expect("forest edges exist"));
        }
        if emulate {
            let link = Link {
                u: root,
                v: c.center,
                weight: forest.dist[c.center],
            };
            target.tree.push(link);
            virtual_links.push(link);
        } else {
            target
                .tree
                .extend(path.windows(2).map(|w| Link { u: w[0], v: w[1], weight: 1 }));
        }
    }
    for c in &mut next {
        c.members.sort_unstable();
        if !emulate {
            c.tree.sort_unstable_by_key(|l| (l.u.min(l.v), l.u.max(l.v)));
            c.tree.dedup_by_key(|l| (l.u.min(l.v), l.u.max(l.v)));
        }
    }
    SuperclusterOutcome {
        next: ClusterPartition {
            phase: next_phase,
            clusters: next,
        },
        unclustered,
        sampled,
        forest_edges: forest_edges.to_vec(),
        virtual_links,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InterconnectOutcome {
    pub edges: Vec<usize>,
    /// Emulator edges, one per connected center pair.
    pub links: Vec<Link>,
    /// Most explorations that visited a single vertex.
    pub max_visitors: usize,
}

/// Phase 0 adds every edge incident to an unclustered singleton. Later
/// phases explore from each unclustered center to `depth` and add a shortest
/// path (or one link) to every center of `partition` found.
pub fn interconnect(
    g: &Graph,
    partition: &ClusterPartition,
    unclustered: &[usize],
    depth: u64,
    phase: usize,
    emulate: bool,
) -> InterconnectOutcome {
    let mut out = InterconnectOutcome::default();
    let mut chosen = EdgeSet::new(g.m());
    if phase == 0 {
        for &ci in unclustered {
            for &v in &partition.clusters[ci].members {
                for (w, id) in g.incident(v) {
                    if chosen.insert(id) && emulate {
                        out.links.push(Link { u: v.min(w), v: v.max(w), weight: 1 });
                    }
                }
            }
        }
        out.edges = chosen.to_vec();
        return out;
    }
    let n = g.n();
    let mut is_center = vec![false; n];
    for c in &partition.clusters {
        is_center[c.center] = true;
    }
    let mut sources: Vec<usize> = unclustered.iter().map(|&ci| partition.clusters[ci].center).collect();
    sources.sort_unstable();
    let mut visitors = vec![0usize; n];
    let mut walked = vec![usize::MAX; n];
    let mut bfs = BfsScratch::new(n);
    for &s in &sources {
        bfs.run(g, s, depth);
        walked[s] = s;
        for &v in bfs.visited() {
            visitors[v] += 1;
            if v == s || !is_center[v] {
                continue;
            }
            if emulate {
                out.links.push(Link {
                    u: s.min(v),
                    v: s.max(v),
                    weight: bfs.dist(v).expect("visited"),
                });
                continue;
            }
            let mut x = v;
            while walked[x] != s {
                walked[x] = s;
                let p = bfs.parent(x).expect("non-source has a parent");
                chosen.insert(g.edge_id(x, p).expect("bfs edges exist"));
                x = p;
            }
        }
    }
    out.max_visitors = visitors.iter().copied().max().unwrap_or(0);
    out.edges = chosen.to_vec();
    out
}

/// Weighted graph on the input vertices whose edge weights are hop
/// distances of the input graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emulator {
    pub n: usize,
    /// `(u, v, weight)` with `u < v`, sorted, one per pair.
    pub edges: Vec<(usize, usize, u64)>,
}

impl Emulator {
    pub fn to_graph(&self) -> Graph {
        let mut b = GraphBuilder::with_capacity(self.n, self.edges.len());
        b.weighted(true);
        for &(u, v, w) in &self.edges {
            b.add_weighted_edge(u, v, w as f64).expect("emulator edges are valid");
        }
        b.build().expect("emulator edges are valid")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseRecord {
    pub index: usize,
    pub deg: f64,
    pub delta: f64,
    /// Measured radius of the partition entering the phase.
    pub partition_radius: u64,
    pub sampled: usize,
    pub unclustered: usize,
    pub edges_added: usize,
    pub max_visitors: usize,
    pub visitor_cap: f64,
}

impl PhaseRecord {
    pub fn cap_exceeded(&self) -> bool {
        self.max_visitors as f64 > self.visitor_cap
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NearAdditiveResult {
    pub schedule: PhaseSchedule,
    /// Seed of the returned attempt.
    pub seed: u64,
    pub attempts: usize,
    /// Spanner edge ids; empty for the emulator.
    pub edges: Vec<usize>,
    pub emulator: Option<Emulator>,
    /// Phases `0..=ell`.
    pub phases: Vec<PhaseRecord>,
    pub unclustered: UnclusteredRecord,
    /// Partition entering each phase `0..=ell`.
    pub partitions: Vec<ClusterPartition>,
    /// Whether the returned run still exceeded a visitor cap.
    pub cap_overflow: bool,
}

impl NearAdditiveResult {
    pub fn size(&self) -> usize {
        match &self.emulator {
            Some(e) => e.edges.len(),
            None => self.edges.len(),
        }
    }

    /// Spanner (subgraph of `g`) or emulator as a graph.
    pub fn to_graph(&self, g: &Graph) -> Graph {
        match &self.emulator {
            Some(e) => e.to_graph(),
            None => g.subgraph(self.edges.iter().copied()),
        }
    }
}

/// Runs with overflowing visitor caps are retried with a fresh seed this
/// many times.
pub const CAP_RETRIES: usize = 8;

fn run_once(g: &Graph, s: &PhaseSchedule, seed: u64) -> NearAdditiveResult {
    let emulate = s.variant == Variant::Emulator;
    let mut spanner = EdgeSet::new(g.m());
    let mut links: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut add_links = |ls: &[Link]| {
        for l in ls {
            let key = (l.u.min(l.v), l.u.max(l.v));
            let w = links.entry(key).or_insert(l.weight);
            *w = (*w).min(l.weight);
        }
    };
    let mut partition = ClusterPartition::singletons(g.n());
    let mut phases = Vec::new();
    let mut unclustered = UnclusteredRecord::default();
    let mut partitions = Vec::with_capacity(s.ell + 1);

    for i in 0..=s.ell {
        let partition_radius = partition.radius().unwrap_or(u64::MAX);
        let (out_partition, left, sampled, mut added) = if i < s.ell {
            let sampler = Substream::new(seed, streams::CLUSTER_SAMPLING + i as u64);
            let sc = supercluster(
                g,
                &partition,
                s.sample_probability(i),
                s.supercluster_depth(i),
                &sampler,
                emulate && i > 0,
            );
            let mut added = 0;
            if emulate && i > 0 {
                added += sc.virtual_links.len();
                add_links(&sc.virtual_links);
            } else {
                for &id in &sc.forest_edges {
                    spanner.insert(id);
                }
                added += sc.forest_edges.len();
            }
            (sc.next, sc.unclustered, sc.sampled.len(), added)
        } else {
            let all = (0..partition.clusters.len()).collect();
            let empty = ClusterPartition {
                phase: i + 1,
                clusters: Vec::new(),
            };
            (empty, all, 0, 0)
        };
        let ic = interconnect(g, &partition, &left, s.interconnect_depth(i), i, emulate && i > 0);
        if emulate && i > 0 {
            added += ic.links.len();
            add_links(&ic.links);
        } else {
            added += ic.edges.len();
            for &id in &ic.edges {
                spanner.insert(id);
            }
        }
        phases.push(PhaseRecord {
            index: i,
            deg: s.deg[i],
            delta: s.delta[i],
            partition_radius,
            sampled,
            unclustered: left.len(),
            edges_added: added,
            max_visitors: ic.max_visitors,
            visitor_cap: s.visitor_cap(i),
        });
        unclustered
            .phases
            .push(left.iter().map(|&ci| partition.clusters[ci].clone()).collect());
        partitions.push(core::mem::replace(&mut partition, out_partition));
    }

    let cap_overflow = phases.iter().any(|p| p.cap_exceeded());
    let (edges, emulator) = if emulate {
        for id in spanner.iter() {
            let e = g.edge(id);
            links.insert((e.u, e.v), 1);
        }
        let edges = links.into_iter().map(|((u, v), w)| (u, v, w)).collect();
        (Vec::new(), Some(Emulator { n: g.n(), edges }))
    } else {
        (spanner.to_vec(), None)
    };
    NearAdditiveResult {
        schedule: s.clone(),
        seed,
        attempts: 1,
        edges,
        emulator,
        phases,
        unclustered,
        partitions,
        cap_overflow,
    }
}

/// Builds the spanner or emulator of `schedule.variant` for an unweighted
/// graph with `schedule.n` vertices.
pub fn build_with_schedule(g: &Graph, schedule: &PhaseSchedule, seed: u64) -> Result<NearAdditiveResult> {
    if g.is_weighted() {
        return Err(invalid!("near-additive constructions need an unweighted graph"));
    }
    if g.n() != schedule.n {
        return Err(invalid!("schedule is for {} vertices, graph has {}", schedule.n, g.n()));
    }
    let mut last = None;
    for a in 0..CAP_RETRIES {
        let mut r = run_once(g, schedule, child_seed(seed, a as u64));
        r.attempts = a + 1;
        if !r.cap_overflow {
            return Ok(r);
        }
        last = Some(r);
    }
    Ok(last.expect("at least one attempt"))
}

pub fn build(
    g: &Graph,
    kappa: u32,
    eps_user: f64,
    rho: f64,
    variant: Variant,
    seed: u64,
) -> Result<NearAdditiveResult> {
    let schedule = make_schedule(g.n(), kappa, eps_user, rho, variant)?;
    build_with_schedule(g, &schedule, seed)
}
