#![allow(dead_code)]

use std::path::Path;

use spanner_tools::cli::run_with;

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("spanners").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Value of `key` in a text report.
pub fn field<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report.lines().find_map(|l| {
        let mut it = l.split_whitespace();
        (it.next() == Some(key)).then(|| it.next()).flatten()
    })
}

/// Golden build invocations: (fixture name, graph, flags).
pub const CASES: &[(&str, &str, &[&str])] = &[
    ("mult-er", "er:120:0.08", &["--algo", "mult", "--k", "3", "--seed", "11"]),
    ("mult-grid", "grid:9:9", &["--algo", "mult", "--k", "2", "--seed", "12"]),
    ("mult-linear", "er:150:0.1", &["--algo", "mult", "--k", "4", "--preset", "linear-time", "--seed", "13"]),
    ("weighted-rw", "rw:100:0.15:10000", &["--algo", "weighted", "--k", "3", "--eps", "0.25", "--seed", "21"]),
    ("weighted-er", "er:100:0.1", &["--algo", "weighted", "--k", "2", "--eps", "0.5", "--seed", "22"]),
    ("weighted-small-eps", "rw:80:0.2:500", &["--algo", "weighted", "--k", "3", "--eps", "0.05", "--seed", "23"]),
    ("basic-grid", "grid:10:10", &["--algo", "nearadd-basic", "--kappa", "3", "--rho", "0.4", "--seed", "31"]),
    ("basic-er", "er:120:0.06", &["--algo", "nearadd-basic", "--kappa", "4", "--seed", "32"]),
    ("basic-eps1", "er:120:0.06", &["--algo", "nearadd-basic", "--kappa", "2", "--eps", "1", "--seed", "33"]),
    ("improved-grid", "grid:10:10", &["--algo", "nearadd-improved", "--kappa", "4", "--seed", "41"]),
    ("improved-er", "er:150:0.05", &["--algo", "nearadd-improved", "--kappa", "8", "--preset", "rho-log-kappa", "--seed", "42"]),
    ("improved-path", "path:60", &["--algo", "nearadd-improved", "--kappa", "2", "--seed", "43"]),
    ("emulator-er", "er:120:0.06", &["--algo", "emulator", "--kappa", "4", "--seed", "51"]),
    ("emulator-grid", "grid:10:10", &["--algo", "emulator", "--kappa", "3", "--rho", "0.4", "--seed", "52"]),
    ("emulator-k8", "er:150:0.05", &["--algo", "emulator", "--kappa", "8", "--rho", "0.25", "--seed", "53"]),
];

pub fn fixture_dir() -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn produce(graph: &str, extra: &[&str], out: &std::path::Path) -> String {
    let mut args = vec!["build", "--graph", graph, "--out", path_str(out)];
    args.extend_from_slice(extra);
    let o = run(&args);
    assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
    std::fs::read_to_string(out).unwrap()
}
