mod common;

use common::{fixture_dir, produce, CASES};

/// Set SPANNERS_BLESS=1 to rewrite the fixtures.
#[test]
fn outputs_match_fixtures_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let bless = std::env::var_os("SPANNERS_BLESS").is_some();
    for (name, graph, extra) in CASES {
        let text = produce(graph, extra, &dir.path().join(name));
        let again = produce(graph, extra, &dir.path().join(format!("{name}.2")));
        assert_eq!(text, again, "{name} not reproducible in-process");
        let fixture = fixture_dir().join(format!("{name}.txt"));
        if bless {
            std::fs::write(&fixture, &text).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&fixture)
            .unwrap_or_else(|e| panic!("{}: {e}", fixture.display()));
        assert!(text == expected, "{name} differs from its fixture");
    }
}

#[test]
fn seed_changes_output() {
    let dir = tempfile::tempdir().unwrap();
    let a = produce("er:120:0.08", &["--k", "3", "--seed", "1"], &dir.path().join("a"));
    let b = produce("er:120:0.08", &["--k", "3", "--seed", "2"], &dir.path().join("b"));
    assert_ne!(a, b);
}
