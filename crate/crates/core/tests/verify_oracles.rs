mod common;

use common::floyd_warshall;
use spanner_core::graph::{dijkstra, generate, hop_distances, Model};
use spanner_core::mult::{build_spanner, ExpClusterParams};
use spanner_core::nearadd::{build, Variant};
use spanner_core::verify::{
    approx_distances, check_multiplicative, mc_order_statistics, round_up_to_power, run_trials,
    BuilderSpec, CheckMode, DistanceMatrix,
};

#[test]
fn edge_and_pair_checks_agree() {
    let g = generate(Model::ErdosRenyi { n: 120, p: 0.06 }, 2).unwrap();
    for seed in 0..15 {
        let r = build_spanner(&g, &ExpClusterParams::new(g.n(), 3, 4.0, seed).unwrap()).unwrap();
        let h = r.to_graph(&g);
        let a = check_multiplicative(&g, &h, 5.0, CheckMode::EdgesOnly).unwrap();
        let b = check_multiplicative(&g, &h, 5.0, CheckMode::AllPairs).unwrap();
        assert_eq!(a.passed(), b.passed());
        assert_eq!(a.max_stretch, b.max_stretch);
        if r.radii_ok {
            assert!(a.passed());
        }
    }
}

#[test]
fn distance_matrix_matches_floyd_warshall() {
    let g = generate(Model::RandomWeighted { n: 50, p: 0.1, wmax: 20.0 }, 1).unwrap();
    let m = DistanceMatrix::new(&g);
    let fw = floyd_warshall(&g);
    for u in 0..g.n() {
        for v in 0..g.n() {
            assert!((m.get(u, v) - fw[u][v]).abs() < 1e-9 || m.get(u, v) == fw[u][v]);
        }
    }
}

#[test]
fn order_statistics_closed_form() {
    let stats = mc_order_statistics(std::f64::consts::LN_2, &[0.0; 20], 200_000, 3).unwrap();
    for t in stats.tails.iter().take(6) {
        assert!((t.empirical - t.closed_form).abs() < 0.01, "{t:?}");
        assert!(t.interval.0 <= t.empirical && t.empirical <= t.interval.1);
    }
    assert_eq!(stats.tails[0].empirical, 1.0);
}

#[test]
fn order_statistics_with_unequal_shifts() {
    let shifts: Vec<f64> = (0..10).map(|i| i as f64 * 0.3).collect();
    let stats = mc_order_statistics(1.0, &shifts, 100_000, 4).unwrap();
    // The closed form bounds the tail for arbitrary shifts.
    for t in &stats.tails {
        assert!(t.empirical <= t.closed_form + 0.01);
    }
}

#[test]
fn radii_ok_rate_respects_claim() {
    let g = generate(Model::ErdosRenyi { n: 200, p: 0.1 }, 0).unwrap();
    let trials = 600;
    let stats = run_trials(&g, &BuilderSpec::Mult { k: 3, c: 4.0 }, trials, 5, false);
    let sigma = (0.75f64 * 0.25 / trials as f64).sqrt();
    assert!(stats.radii_ok_rate() >= 0.75 - 3.0 * sigma);
}

#[test]
fn approx_distances_on_path() {
    let g = generate(Model::Path { n: 60 }, 0).unwrap();
    let a = approx_distances(&g, &[0], 4, 0.5, 0.5, 1, true).unwrap();
    assert!(a.certificate_violations(&g).is_empty());
    let exact = hop_distances(&g, 0);
    for v in 0..60 {
        assert!(a.table[0][v] >= exact[v] as f64);
    }
}

#[test]
fn rounding_off_reproduces_emulator_distances() {
    let g = generate(Model::ErdosRenyi { n: 150, p: 0.04 }, 1).unwrap();
    let a = approx_distances(&g, &[0, 7, 99], 4, 0.25, 0.5, 3, false).unwrap();
    let emu = build(&g, 4, 0.25, 0.5, Variant::Emulator, 3).unwrap().emulator.unwrap().to_graph();
    for (i, &s) in a.sources.iter().enumerate() {
        assert_eq!(a.table[i], dijkstra(&emu, s));
    }
}

#[test]
fn rounding_changes_paths_by_at_most_eps() {
    let g = generate(Model::RandomWeighted { n: 40, p: 0.2, wmax: 100.0 }, 2).unwrap();
    let r = g.map_weights(|_, w| round_up_to_power(w, 1.25)).unwrap();
    for id in 0..g.m() {
        assert!(r.weight(id) >= g.weight(id) && r.weight(id) <= 1.25 * g.weight(id) * (1.0 + 1e-12));
    }
    let (a, b) = (floyd_warshall(&g), floyd_warshall(&r));
    for u in 0..g.n() {
        for v in 0..g.n() {
            assert!(b[u][v] >= a[u][v] - 1e-9 && b[u][v] <= 1.25 * a[u][v] + 1e-9);
        }
    }
}

#[test]
fn approx_distances_certificate_holds() {
    let g = generate(Model::ErdosRenyi { n: 300, p: 0.03 }, 8).unwrap();
    let sources: Vec<usize> = (0..300).step_by(37).collect();
    let a = approx_distances(&g, &sources, 4, 0.25, 0.5, 2, true).unwrap();
    assert!(a.certificate_violations(&g).is_empty());
    assert!(a.distinct_weights >= 1);
}
