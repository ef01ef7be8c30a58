mod common;

use common::{floyd_warshall, max_stretch};
use proptest::prelude::*;
use spanner_core::graph::{generate, Model};
use spanner_core::mult::{
    build_spanner, build_spanner_guaranteed, edge_budget, preset, sample_radii, ExpClusterParams,
    Preset, RetryOptions,
};

fn params(n: usize, k: u32, seed: u64) -> ExpClusterParams {
    ExpClusterParams::new(n, k, 4.0, seed).unwrap()
}

#[test]
fn stretch_within_bound_when_radii_ok() {
    let g = generate(Model::ErdosRenyi { n: 120, p: 0.08 }, 11).unwrap();
    let dg = floyd_warshall(&g);
    for k in [2u32, 3, 4] {
        let mut checked = 0;
        for seed in 0..40 {
            let r = build_spanner(&g, &params(g.n(), k, seed)).unwrap();
            if !r.radii_ok {
                continue;
            }
            checked += 1;
            let dh = floyd_warshall(&r.to_graph(&g));
            assert!(max_stretch(&dg, &dh) <= (2 * k - 1) as f64, "k={k} seed={seed}");
        }
        assert!(checked > 20);
    }
}

#[test]
fn trees_are_kept_whole() {
    for g in [
        generate(Model::Path { n: 30 }, 0).unwrap(),
        generate(Model::Star { leaves: 25 }, 0).unwrap(),
    ] {
        for seed in 0..20 {
            let r = build_spanner(&g, &params(g.n(), 3, seed)).unwrap();
            assert_eq!(r.edge_count(), g.m());
        }
    }
}

#[test]
fn k_one_keeps_every_edge() {
    let g = generate(Model::ErdosRenyi { n: 50, p: 0.2 }, 1).unwrap();
    for seed in 0..20 {
        let r = build_spanner(&g, &params(g.n(), 1, seed)).unwrap();
        if r.radii_ok {
            assert_eq!(r.edge_count(), g.m());
        }
    }
}

#[test]
fn radii_follow_exponential_law() {
    // P[r > 1] = e^{-beta}.
    let n = 20_000;
    let p = params(n, 3, 5);
    let r = sample_radii(&p, n);
    let frac = r.iter().filter(|&&x| x > 1.0).count() as f64 / n as f64;
    let want = (-p.beta()).exp();
    let sigma = (want * (1.0 - want) / n as f64).sqrt();
    assert!((frac - want).abs() < 4.0 * sigma, "{frac} vs {want}");
}

#[test]
fn guaranteed_run_respects_budget() {
    let g = generate(Model::ErdosRenyi { n: 200, p: 0.1 }, 3).unwrap();
    for seed in 0..10 {
        let r = build_spanner_guaranteed(&g, 3, 4.0, 1.0, seed, RetryOptions::default()).unwrap();
        assert!(r.radii_ok);
        assert!(r.edge_count() as f64 <= edge_budget(g.n(), 3, 4.0, 1.0));
    }
}

#[test]
fn presets_produce_valid_parameters() {
    let (c, d) = preset(Preset::LinearTime, 1000, 4).unwrap();
    assert!(c > 3.0 && d > 0.0);
    let (c, d) = preset(Preset::UltraSparse(0.5), 1000, 14).unwrap();
    assert_eq!(c, 14.0);
    assert_eq!(d, 4.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spanner_is_subgraph_preserving_components(n in 5usize..60, p in 0.02f64..0.4, k in 1u32..5, seed: u64) {
        let g = generate(Model::ErdosRenyi { n, p }, seed).unwrap();
        let r = build_spanner(&g, &params(n, k, seed)).unwrap();
        let h = r.to_graph(&g);
        for e in h.edges() {
            prop_assert!(g.has_edge(e.u, e.v));
        }
        prop_assert_eq!(h.components(), g.components());
        prop_assert!(r.edges.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn same_seed_same_output(n in 5usize..60, seed: u64) {
        let g = generate(Model::ErdosRenyi { n, p: 0.2 }, seed).unwrap();
        let a = build_spanner(&g, &params(n, 3, seed)).unwrap();
        let b = build_spanner(&g, &params(n, 3, seed)).unwrap();
        prop_assert_eq!(a, b);
    }
}
