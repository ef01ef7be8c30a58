mod common;

use common::{bellman_ford, floyd_warshall};
use proptest::prelude::*;
use spanner_core::graph::{bfs_bounded, dijkstra, generate, hop_distances, BfsScratch, Model};
use spanner_core::GraphBuilder;

fn arb_graph(max_n: usize, weighted: bool) -> impl Strategy<Value = spanner_core::Graph> {
    (2..max_n).prop_flat_map(move |n| {
        let pairs = prop::collection::vec((0..n, 0..n, 1u32..50), 0..3 * n);
        pairs.prop_map(move |es| {
            let mut b = GraphBuilder::new(n);
            b.weighted(weighted);
            for (u, v, w) in es {
                if u != v {
                    if weighted {
                        b.add_weighted_edge(u, v, w as f64).unwrap();
                    } else {
                        b.add_edge(u, v).unwrap();
                    }
                }
            }
            b.build().unwrap()
        })
    })
}

#[test]
fn grid_corner_distance() {
    let g = generate(Model::Grid { w: 5, h: 5 }, 0).unwrap();
    assert_eq!(hop_distances(&g, 0)[24], 8);
    assert_eq!(floyd_warshall(&g)[0][24], 8.0);
    assert_eq!(g.m(), 40);
}

#[test]
fn complete_graph_shape() {
    let g = generate(Model::Complete { n: 12 }, 0).unwrap();
    assert_eq!(g.m(), 66);
    assert!((0..12).all(|u| g.degree(u) == 11));
}

#[test]
fn parallel_edges_keep_lightest() {
    let mut b = GraphBuilder::new(3);
    b.add_weighted_edge(0, 1, 5.0).unwrap();
    b.add_weighted_edge(1, 0, 2.0).unwrap();
    b.add_weighted_edge(1, 2, 1.0).unwrap();
    let g = b.build().unwrap();
    assert_eq!(g.m(), 2);
    assert_eq!(g.weight(g.edge_id(0, 1).unwrap()), 2.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bfs_matches_oracle(g in arb_graph(30, false)) {
        let fw = floyd_warshall(&g);
        let mut scratch = BfsScratch::new(g.n());
        for s in 0..g.n() {
            let d = hop_distances(&g, s);
            scratch.run(&g, s, 3);
            for v in 0..g.n() {
                let want = fw[s][v];
                if want.is_finite() {
                    prop_assert_eq!(d[v] as f64, want);
                } else {
                    prop_assert_eq!(d[v], u64::MAX);
                }
                let bounded = scratch.dist(v).map(|x| x as f64);
                prop_assert_eq!(bounded, (want <= 3.0).then_some(want));
            }
        }
    }

    #[test]
    fn multi_source_forest_is_consistent(g in arb_graph(30, false), k in 1usize..4, depth in 0u64..6) {
        let sources: Vec<usize> = (0..g.n()).step_by(g.n().div_ceil(k)).collect();
        let f = bfs_bounded(&g, &sources, depth).unwrap();
        let fw = floyd_warshall(&g);
        for v in 0..g.n() {
            let nearest = sources.iter().map(|&s| fw[s][v]).fold(f64::INFINITY, f64::min);
            if nearest <= depth as f64 {
                prop_assert_eq!(f.dist[v] as f64, nearest);
                let root = f.root[v].unwrap();
                prop_assert_eq!(fw[root][v], nearest);
                let path = f.path_to_root(v);
                prop_assert_eq!(path.len() as f64, nearest + 1.0);
                for w in path.windows(2) {
                    prop_assert!(g.has_edge(w[0], w[1]));
                }
            } else {
                prop_assert!(!f.reached(v));
            }
        }
    }

    #[test]
    fn dijkstra_matches_bellman_ford(g in arb_graph(40, true)) {
        for s in 0..g.n().min(5) {
            let a = dijkstra(&g, s);
            let b = bellman_ford(&g, s);
            for v in 0..g.n() {
                prop_assert!(a[v] == b[v] || (a[v] - b[v]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn components_agree_with_reachability(g in arb_graph(30, false)) {
        let c = g.components();
        let fw = floyd_warshall(&g);
        for u in 0..g.n() {
            for v in 0..g.n() {
                prop_assert_eq!(c[u] == c[v], fw[u][v].is_finite());
            }
        }
    }
}
