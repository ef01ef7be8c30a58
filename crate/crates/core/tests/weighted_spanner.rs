mod common;

use common::{floyd_warshall, max_stretch};
use spanner_core::graph::{generate, Model};
use spanner_core::mult::{build_spanner, ExpClusterParams};
use spanner_core::weighted::{build_weighted_spanner, decompose, WeightedParams};
use spanner_core::GraphBuilder;

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let next = p[y];
        p[y] = r;
        y = next;
    }
    r
}

#[test]
fn unit_weights_reduce_to_unweighted_construction() {
    let g = generate(Model::ErdosRenyi { n: 150, p: 0.06 }, 8).unwrap();
    let mut b = GraphBuilder::new(g.n());
    b.weighted(true);
    for e in g.edges() {
        b.add_weighted_edge(e.u, e.v, 1.0).unwrap();
    }
    let gw = b.build().unwrap();
    let mut compared = 0;
    for seed in 0..20 {
        let m = build_spanner(&g, &ExpClusterParams::new(g.n(), 3, 4.0, seed).unwrap()).unwrap();
        if !m.radii_ok {
            continue;
        }
        let w = build_weighted_spanner(&gw, &WeightedParams::new(3, 0.25, seed)).unwrap();
        assert_eq!(w.result.edges, m.edges, "seed {seed}");
        assert_eq!(w.result.radii, m.radii);
        compared += 1;
    }
    assert!(compared > 10);
}

#[test]
fn stretch_within_bound() {
    for gseed in 0..3 {
        let g = generate(Model::RandomWeighted { n: 70, p: 0.15, wmax: 1e3 }, gseed).unwrap();
        let dg = floyd_warshall(&g);
        for seed in 0..10 {
            let w = build_weighted_spanner(&g, &WeightedParams::new(3, 0.25, seed)).unwrap();
            let dh = floyd_warshall(&w.result.to_graph(&g));
            assert!(max_stretch(&dg, &dh) <= w.stretch_bound() * (1.0 + 1e-9));
        }
    }
}

#[test]
fn k_one_returns_the_graph() {
    let g = generate(Model::RandomWeighted { n: 30, p: 0.3, wmax: 50.0 }, 1).unwrap();
    let w = build_weighted_spanner(&g, &WeightedParams::new(1, 0.5, 0)).unwrap();
    assert_eq!(w.result.edge_count(), g.m());
}

#[test]
fn contraction_is_sound() {
    let g = generate(Model::RandomWeighted { n: 120, p: 0.1, wmax: 1e4 }, 4).unwrap();
    let w = build_weighted_spanner(&g, &WeightedParams::new(3, 0.25, 2)).unwrap();
    let in_h: std::collections::HashSet<usize> = w.result.edges.iter().copied().collect();
    for levels in &w.levels {
        let mut parent: Vec<usize> = (0..g.n()).collect();
        for level in levels {
            // Every super-vertex is held together by earlier cluster edges.
            let mut rep = vec![usize::MAX; level.super_count];
            for v in 0..g.n() {
                let s = level.super_vertices[v];
                let r = find(&mut parent, v);
                if rep[s] == usize::MAX {
                    rep[s] = r;
                }
                assert_eq!(rep[s], r);
            }
            for &id in &level.level_spanner_edges {
                let e = g.edge(id);
                assert_ne!(level.super_vertices[e.u], level.super_vertices[e.v]);
                assert!(in_h.contains(&id));
            }
            for &id in &level.cluster_trees {
                assert!(in_h.contains(&id));
                let e = g.edge(id);
                let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
                parent[a] = b;
            }
        }
    }
}

#[test]
fn categories_match_direct_formula() {
    let g = generate(Model::RandomWeighted { n: 100, p: 0.2, wmax: 5e3 }, 9).unwrap();
    let eps: f64 = 0.25;
    let d = decompose(&g, 3, eps, 3).unwrap();
    let wmin = (0..g.m()).map(|i| g.weight(i)).fold(f64::INFINITY, f64::min);
    let wmax = (0..g.m()).map(|i| g.weight(i)).fold(0.0, f64::max);
    let lambda = ((wmax / wmin).ln() / (1.0 + eps).ln()).ceil() as u32;
    assert_eq!(d.lambda, lambda.max(1));
    let ell = (27f64.ln() / (1.0 + eps).ln()).ceil() as u32;
    assert_eq!(d.ell, ell);
    for id in 0..g.m() {
        let t = ((g.weight(id) / wmin).ln() / (1.0 + eps).ln()).floor() as u32 + 1;
        let t = t.min(d.lambda);
        // Float rounding may only move values sitting on a boundary.
        assert!(d.edge_category[id].abs_diff(t) <= 1);
    }
    let scales: usize = d.scales.iter().map(|s| s.levels.len()).sum();
    assert!(scales as u32 <= d.lambda);
    assert!(d.scales.iter().all(|s| s.levels.len() as u32 <= d.q));
}
