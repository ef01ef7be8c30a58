//! Round-synchronous CONGEST execution of the multiplicative spanner.
//!
//! Each node only knows its own radius and its neighbors. In every round it
//! sends one message `(origin, r_origin, dist)` over each incident edge,
//! describing the origin that currently maximizes `r_origin - dist` at the
//! node. After `k` rounds every node keeps the edges towards the senders of
//! messages within one of its best value.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::graph::{EdgeSet, Graph};
use crate::mult::{sample_radii, ExpClusterParams};

/// Payload of one message.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundMessage {
    pub origin: usize,
    pub r_value: f64,
    /// Hops travelled, counting the edge it is being delivered over.
    pub dist: u32,
}

/// A delivered message, as written to the trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoggedMessage {
    pub round: u32,
    pub from: usize,
    pub to: usize,
    pub msg: RoundMessage,
}

/// What a node knows at the end of the run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeOutcome {
    pub m: f64,
    pub origin: usize,
    /// `None` when the node's best is its own value.
    pub via: Option<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SimOptions {
    /// Keep every delivered message.
    pub log_messages: bool,
    /// Keep every node's best value after every round.
    pub record_bests: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimTranscript {
    pub n: usize,
    pub k: u32,
    pub rounds_executed: u32,
    pub total_messages: u64,
    pub max_messages_per_edge_round: u32,
    pub log: Option<Vec<LoggedMessage>>,
    /// `bests[t][x]`: best value at `x` after round `t`; row 0 is the start.
    pub bests: Option<Vec<Vec<f64>>>,
    /// Spanner edge ids, ascending.
    pub spanner_edges: Vec<usize>,
    pub outcome: Vec<NodeOutcome>,
    pub radii: Vec<f64>,
    pub radii_ok: bool,
    /// Most `(origin, via)` records any node retained at the end.
    pub peak_retained: usize,
    /// `c ln n e^beta`; exceeding it is reported, not enforced.
    pub retention_limit: f64,
}

impl SimTranscript {
    pub fn retention_exceeded(&self) -> bool {
        self.peak_retained as f64 > self.retention_limit
    }
}

#[derive(Debug, Clone, Copy)]
struct Heard {
    origin: usize,
    via: usize,
    m: f64,
}

struct Node {
    id: usize,
    r: f64,
    best_m: f64,
    best_origin: usize,
    best_dist: u32,
    best_via: Option<usize>,
    heard: Vec<Heard>,
}

impl Node {
    fn outgoing(&self, r_of_best: f64) -> RoundMessage {
        RoundMessage {
            origin: self.best_origin,
            r_value: r_of_best,
            dist: self.best_dist + 1,
        }
    }

    fn receive(&mut self, from: usize, msg: RoundMessage) -> Option<f64> {
        let m = msg.r_value - msg.dist as f64;
        self.heard.push(Heard {
            origin: msg.origin,
            via: from,
            m,
        });
        let wins = m > self.best_m || (m == self.best_m && msg.origin < self.best_origin);
        if wins {
            self.best_m = m;
            self.best_origin = msg.origin;
            self.best_dist = msg.dist;
            self.best_via = Some(from);
            Some(msg.r_value)
        } else {
            None
        }
    }

    /// Best `(origin, via)` per origin, then the threshold filter.
    fn retained(&self) -> Vec<Heard> {
        let mut per_origin: Vec<Heard> = Vec::new();
        let mut all = self.heard.clone();
        all.sort_by(|a, b| {
            a.origin
                .cmp(&b.origin)
                .then(b.m.total_cmp(&a.m))
                .then(a.via.cmp(&b.via))
        });
        for h in all {
            if per_origin.last().map(|p| p.origin) != Some(h.origin) {
                per_origin.push(h);
            }
        }
        let floor = self.best_m - 1.0;
        per_origin.retain(|h| h.m >= floor);
        per_origin
    }
}

/// Runs `k` synchronous rounds on `g` with the radii of `params`.
pub fn simulate(g: &Graph, params: &ExpClusterParams, options: SimOptions) -> Result<SimTranscript> {
    if g.is_weighted() {
        return Err(crate::error::invalid!("the simulator runs on unweighted graphs"));
    }
    let n = g.n();
    let k = params.k();
    let radii = sample_radii(params, n);
    let mut nodes: Vec<Node> = (0..n)
        .map(|x| Node {
            id: x,
            r: radii[x],
            best_m: radii[x],
            best_origin: x,
            best_dist: 0,
            best_via: None,
            // A node hears itself at distance 0.
            heard: vec![Heard {
                origin: x,
                via: x,
                m: radii[x],
            }],
        })
        .collect();
    // r-value of each node's current best, as carried by the messages.
    let mut best_r: Vec<f64> = radii.clone();

    let mut log = options.log_messages.then(Vec::new);
    let mut bests = options
        .record_bests
        .then(|| vec![nodes.iter().map(|v| v.best_m).collect::<Vec<_>>()]);
    let mut per_slot = vec![0u32; 2 * g.m()];
    let mut slot_base = vec![0usize; n + 1];
    for x in 0..n {
        slot_base[x + 1] = slot_base[x] + g.degree(x);
    }
    let (mut total, mut max_per_edge) = (0u64, 0u32);

    for round in 1..=k {
        // Senders snapshot their state before anything is delivered.
        let outbox: Vec<RoundMessage> = nodes.iter().map(|v| v.outgoing(best_r[v.id])).collect();
        per_slot.iter_mut().for_each(|c| *c = 0);
        let mut inboxes: Vec<Vec<(usize, RoundMessage)>> = vec![Vec::new(); n];
        for v in 0..n {
            for (i, &x) in g.neighbors(v).iter().enumerate() {
                let slot = slot_base[v] + i;
                per_slot[slot] += 1;
                max_per_edge = max_per_edge.max(per_slot[slot]);
                total += 1;
                inboxes[x].push((v, outbox[v]));
                if let Some(log) = log.as_mut() {
                    log.push(LoggedMessage {
                        round,
                        from: v,
                        to: x,
                        msg: outbox[v],
                    });
                }
            }
        }
        for (x, inbox) in inboxes.into_iter().enumerate() {
            for (from, msg) in inbox {
                if let Some(r) = nodes[x].receive(from, msg) {
                    best_r[x] = r;
                }
            }
        }
        if let Some(b) = bests.as_mut() {
            b.push(nodes.iter().map(|v| v.best_m).collect());
        }
    }

    let mut set = EdgeSet::new(g.m());
    let mut peak = 0usize;
    for node in &nodes {
        let kept = node.retained();
        peak = peak.max(kept.len());
        for h in kept {
            if h.via != node.id {
                set.insert(g.edge_id(node.id, h.via).expect("messages travel along edges"));
            }
        }
    }
    let outcome = nodes
        .iter()
        .map(|v| NodeOutcome {
            m: v.best_m,
            origin: v.best_origin,
            via: v.best_via,
        })
        .collect();
    let kf = k as f64;
    let radii_ok = nodes.iter().all(|v| v.r < kf);
    Ok(SimTranscript {
        n,
        k,
        rounds_executed: k,
        total_messages: total,
        max_messages_per_edge_round: max_per_edge,
        log,
        bests,
        spanner_edges: set.to_vec(),
        outcome,
        radii,
        radii_ok,
        peak_retained: peak,
        retention_limit: params.c() * libm::log(n.max(2) as f64) * libm::exp(params.beta()),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub rounds: u32,
    pub total_messages: u64,
    pub max_messages_per_edge_round: u32,
    /// Bits of the integer fields of the widest message.
    pub id_bits: u32,
    /// Budget for the integer fields: `2 * ceil(log2 n)`, at least 2.
    pub id_bit_budget: u32,
    /// Number of real-valued words per message.
    pub real_words: u32,
}

/// Why a transcript fails the CONGEST discipline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AuditFailure {
    #[error("transcript has no message log; rerun with logging enabled")]
    NoLog,
    #[error("round {round}: {count} messages on edge {from}->{to}")]
    Congestion {
        round: u32,
        from: usize,
        to: usize,
        count: u32,
    },
    #[error("round {round}: message {from}->{to} {detail}")]
    Payload {
        round: u32,
        from: usize,
        to: usize,
        detail: String,
    },
}

fn bits(x: u64) -> u32 {
    64 - x.leading_zeros()
}

/// Checks one message per directed edge per round and `O(log n)`-bit
/// integer payloads (plus one real), from the message log alone.
pub fn message_audit(t: &SimTranscript) -> core::result::Result<AuditReport, AuditFailure> {
    let log = t.log.as_ref().ok_or(AuditFailure::NoLog)?;
    let mut keys: Vec<(u32, usize, usize)> = log.iter().map(|l| (l.round, l.from, l.to)).collect();
    keys.sort_unstable();
    let mut max_count = 0u32;
    let mut i = 0;
    while i < keys.len() {
        let mut j = i;
        while j < keys.len() && keys[j] == keys[i] {
            j += 1;
        }
        let count = (j - i) as u32;
        if count > 1 {
            let (round, from, to) = keys[i];
            return Err(AuditFailure::Congestion {
                round,
                from,
                to,
                count,
            });
        }
        max_count = max_count.max(count);
        i = j;
    }
    let budget = (2 * bits(t.n.saturating_sub(1) as u64)).max(2);
    let mut widest = 0;
    for l in log {
        if l.msg.origin >= t.n {
            return Err(AuditFailure::Payload {
                round: l.round,
                from: l.from,
                to: l.to,
                detail: format!("names unknown origin {}", l.msg.origin),
            });
        }
        if l.msg.dist > l.round {
            return Err(AuditFailure::Payload {
                round: l.round,
                from: l.from,
                to: l.to,
                detail: format!("claims {} hops", l.msg.dist),
            });
        }
        let w = bits(l.msg.origin as u64) + bits(l.msg.dist as u64);
        if w > budget + bits(t.k as u64) {
            return Err(AuditFailure::Payload {
                round: l.round,
                from: l.from,
                to: l.to,
                detail: format!("needs {w} id bits"),
            });
        }
        widest = widest.max(w);
    }
    let rounds = log.iter().map(|l| l.round).max().unwrap_or(0);
    Ok(AuditReport {
        rounds,
        total_messages: log.len() as u64,
        max_messages_per_edge_round: max_count,
        id_bits: widest,
        id_bit_budget: budget,
        real_words: 1,
    })
}
