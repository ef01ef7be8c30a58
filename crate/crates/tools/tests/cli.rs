mod common;

use std::process::Command;

use common::{field, path_str, run};
use spanner_tools::io::{format_graph, parse_edge_list, read_edge_list};

#[test]
fn path_example_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("path.txt");
    let h = dir.path().join("h.txt");
    assert_eq!(run(&["gen", "--model", "path", "--n", "10", "--out", path_str(&g)]).code, 0);
    let b = run(&[
        "build", "--graph", path_str(&g), "--algo", "mult", "--k", "2", "--seed", "1", "--out",
        path_str(&h),
    ]);
    assert_eq!(b.code, 0, "{}", b.stderr);
    assert_eq!(field(&b.stdout, "edges"), Some("9"));
    let file = read_edge_list(&h).unwrap();
    assert_eq!(file.graph.m(), 9);
    assert_eq!(file.meta("k"), Some("2"));
    assert_eq!(file.meta("seed"), Some("1"));
    assert!(file.meta("radii_ok").is_some());
    let v = run(&["verify", "--graph", path_str(&g), "--spanner", path_str(&h), "--alpha", "5"]);
    assert_eq!(v.code, 0, "{}", v.stdout);
    assert_eq!(field(&v.stdout, "violations"), Some("0"));
}

#[test]
fn bench_reports_mean_within_bound() {
    let b = run(&[
        "bench", "--graph", "er:500:0.05", "--algo", "mult", "--k", "3", "--c", "4", "--trials",
        "100", "--seed", "7",
    ]);
    assert_eq!(b.code, 0, "{}", b.stderr);
    let mean: f64 = field(&b.stdout, "mean_edges").unwrap().parse().unwrap();
    let bound = (4.0f64 * 500.0).powf(1.0 / 3.0) * 500.0;
    assert!(mean <= 1.05 * bound, "mean {mean} bound {bound}");
    let reported: f64 = field(&b.stdout, "size_bound").unwrap().parse().unwrap();
    assert!((reported - bound).abs() < 1e-6);
}

#[test]
fn graph_round_trip_through_text() {
    for spec in ["er:80:0.1", "grid:6:5", "rw:50:0.2:1000", "star:7"] {
        let g = spanner_tools::source::load_graph(spec, 3).unwrap();
        let text = format_graph(&g, &["note".into()]);
        let back = parse_edge_list(&text, spec).unwrap();
        assert_eq!(back.graph.n(), g.n());
        assert_eq!(back.graph.edges(), g.edges());
        assert_eq!(back.graph.weights(), g.weights());
        assert_eq!(format_graph(&back.graph, &["note".into()]), text);
    }
}

#[test]
fn every_algorithm_verifies_against_its_own_header() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[(&str, &[&str])] = &[
        ("er:200:0.06", &["--algo", "mult", "--k", "3"]),
        ("er:200:0.06", &["--algo", "mult", "--k", "4", "--preset", "linear-time"]),
        ("rw:150:0.1:5000", &["--algo", "weighted", "--k", "3", "--eps", "0.25"]),
        ("grid:12:12", &["--algo", "nearadd-basic", "--kappa", "3", "--eps", "0.5", "--rho", "0.4"]),
        ("er:200:0.06", &["--algo", "nearadd-improved", "--kappa", "4"]),
        ("er:200:0.06", &["--algo", "nearadd", "--variant", "emulator", "--kappa", "4"]),
        ("er:200:0.06", &["--algo", "nearadd-improved", "--kappa", "8", "--preset", "rho-log-kappa"]),
    ];
    for (i, (graph, extra)) in cases.iter().enumerate() {
        let out = dir.path().join(format!("h{i}.txt"));
        let mut args = vec!["build", "--graph", graph, "--seed", "5", "--out", path_str(&out)];
        args.extend_from_slice(extra);
        let b = run(&args);
        assert_eq!(b.code, 0, "{extra:?}: {}", b.stderr);
        let v = run(&["verify", "--graph", graph, "--spanner", path_str(&out)]);
        assert_eq!(v.code, 0, "{extra:?}: {}{}", v.stdout, v.stderr);
    }
}

#[test]
fn verify_flags_a_broken_spanner() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c.txt");
    let h = dir.path().join("h.txt");
    run(&["gen", "--model", "cycle", "--n", "12", "--out", path_str(&g)]);
    // drop one cycle edge: the pair becomes 11 apart
    let mut text = std::fs::read_to_string(&g).unwrap();
    text = text.replace("12 12\n", "12 11\n").replace("0 1\n", "");
    std::fs::write(&h, text).unwrap();
    let v = run(&["verify", "--graph", path_str(&g), "--spanner", path_str(&h), "--alpha", "3", "--mode", "edges"]);
    assert_eq!(v.code, 1);
    assert_eq!(field(&v.stdout, "passed"), Some("false"));
    assert_eq!(field(&v.stdout, "max_stretch"), Some("11"));
}

#[test]
fn simulate_writes_trace_and_matches_build() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.txt");
    let sim_out = dir.path().join("s.txt");
    let build_out = dir.path().join("b.txt");
    let s = run(&[
        "simulate", "--graph", "er:120:0.08", "--k", "3", "--seed", "9", "--trace", path_str(&trace),
        "--out", path_str(&sim_out),
    ]);
    assert_eq!(s.code, 0, "{}", s.stderr);
    assert_eq!(field(&s.stdout, "audit"), Some("ok"));
    assert_eq!(field(&s.stdout, "max_messages_per_edge_round"), Some("1"));
    let total: usize = field(&s.stdout, "total_messages").unwrap().parse().unwrap();
    let trace_text = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(trace_text.lines().count(), total);
    assert!(trace_text.lines().next().unwrap().contains('→'));
    run(&["build", "--graph", "er:120:0.08", "--k", "3", "--seed", "9", "--out", path_str(&build_out)]);
    let a = read_edge_list(&sim_out).unwrap().graph;
    let b = read_edge_list(&build_out).unwrap().graph;
    assert_eq!(a.edges(), b.edges());
}

#[test]
fn distances_csv_has_exact_column() {
    let o = run(&["distances", "--graph", "er:150:0.05", "--sources", "0,5", "--kappa", "4", "--seed", "2"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let mut lines = o.stdout.lines();
    assert_eq!(lines.next(), Some("source,target,estimate,exact,ratio"));
    assert_eq!(o.stdout.lines().count(), 1 + 2 * 150);
    for l in lines {
        let f: Vec<&str> = l.split(',').collect();
        let (est, exact): (f64, f64) = (f[2].parse().unwrap(), f[3].parse().unwrap());
        assert!(est >= exact, "{l}");
    }
}

#[test]
fn exit_codes() {
    let bin = env!("CARGO_BIN_EXE_spanners");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    assert_eq!(status(&["--help"]).status.code(), Some(0));
    assert_eq!(status(&["--version"]).status.code(), Some(0));
    assert_eq!(status(&[]).status.code(), Some(2));
    assert_eq!(status(&["build", "--graph", "path:5"]).status.code(), Some(2));
    assert_eq!(status(&["build", "--graph", "/nonexistent", "--seed", "1"]).status.code(), Some(2));
    let bad_k = status(&["build", "--graph", "path:5", "--k", "0", "--seed", "1"]);
    assert_eq!(bad_k.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_k.stderr).contains("error"));
    let give_up = status(&[
        "build", "--graph", "er:300:0.1", "--k", "6", "--c", "3.01", "--delta", "0.01",
        "--max-attempts", "1", "--seed", "1",
    ]);
    assert_eq!(give_up.status.code(), Some(1), "{}", String::from_utf8_lossy(&give_up.stderr));
    let ok = status(&["build", "--graph", "path:10", "--k", "2", "--seed", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("# algo mult"));
}

#[test]
fn malformed_files_report_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.txt");
    std::fs::write(&f, "# c\n3 2\n0 1\n1 1\n").unwrap();
    let o = run(&["build", "--graph", path_str(&f), "--seed", "1"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains(":4"), "{}", o.stderr);
}

#[test]
fn contradictory_flags_are_usage_errors() {
    for args in [
        &["build", "--graph", "path:8", "--algo", "nearadd", "--seed", "1"][..],
        &["build", "--graph", "path:8", "--algo", "emulator", "--variant", "basic", "--seed", "1"],
        &["build", "--graph", "path:8", "--algo", "weighted", "--delta", "1", "--seed", "1"],
        &["build", "--graph", "rw:10:0.5:9", "--algo", "mult", "--seed", "1"],
        &["verify", "--graph", "path:8", "--spanner", "/nonexistent"],
    ] {
        assert_eq!(run(args).code, 2, "{args:?}");
    }
}
