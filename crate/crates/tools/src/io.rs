//! Plain-text graph files.
//!
//! ```text
//! # comment lines start with '#'
//! 4 3 weighted
//! 0 1 2.5
//! 1 2 1
//! 2 3 4
//! ```
//!
//! The header gives the vertex count, the edge count and optionally the word
//! `weighted`; exactly that many edge lines follow. Each edge appears once.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use spanner_core::congest::SimTranscript;
use spanner_core::nearadd::Emulator;
use spanner_core::{Graph, GraphBuilder};

use crate::error::{ToolError, ToolResult};

/// A parsed file: the graph and its comment lines without the leading `#`.
#[derive(Debug, Clone)]
pub struct EdgeList {
    pub graph: Graph,
    pub comments: Vec<String>,
}

impl EdgeList {
    /// Value of a `# key value` comment line.
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.comments.iter().find_map(|c| {
            let (k, v) = c.split_once(' ')?;
            (k == key).then(|| v.trim())
        })
    }
}

pub fn parse_edge_list(text: &str, name: &str) -> ToolResult<EdgeList> {
    let err = |line: usize, message: String| ToolError::Parse {
        path: name.to_string(),
        line,
        message,
    };
    let mut comments = Vec::new();
    let mut header: Option<(usize, usize, bool)> = None;
    let mut builder: Option<GraphBuilder> = None;
    let mut seen = HashSet::new();
    let mut edges = 0usize;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some((n, m, weighted)) = header else {
            let (n, m, weighted) = match fields.as_slice() {
                [n, m] => (n, m, false),
                [n, m, "weighted"] => (n, m, true),
                _ => return Err(err(lineno, "expected header \"n m\" or \"n m weighted\"".into())),
            };
            let n: usize = n.parse().map_err(|_| err(lineno, format!("bad vertex count {n:?}")))?;
            let m: usize = m.parse().map_err(|_| err(lineno, format!("bad edge count {m:?}")))?;
            header = Some((n, m, weighted));
            let mut b = GraphBuilder::with_capacity(n, m);
            b.weighted(weighted);
            builder = Some(b);
            continue;
        };
        let b = builder.as_mut().expect("builder exists after header");
        if edges == m {
            return Err(err(lineno, format!("more than the {m} edges announced in the header")));
        }
        let want = if weighted { 3 } else { 2 };
        if fields.len() != want {
            return Err(err(lineno, format!("expected {want} fields, found {}", fields.len())));
        }
        let vertex = |s: &str| -> ToolResult<usize> {
            let v: usize = s.parse().map_err(|_| err(lineno, format!("bad vertex {s:?}")))?;
            if v >= n {
                return Err(err(lineno, format!("vertex {v} out of range for {n} vertices")));
            }
            Ok(v)
        };
        let (u, v) = (vertex(fields[0])?, vertex(fields[1])?);
        if u == v {
            return Err(err(lineno, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(lineno, format!("duplicate edge ({u}, {v})")));
        }
        if weighted {
            let w: f64 = fields[2]
                .parse()
                .map_err(|_| err(lineno, format!("bad weight {:?}", fields[2])))?;
            if !(w > 0.0 && w.is_finite()) {
                return Err(err(lineno, format!("weight must be positive and finite, got {w}")));
            }
            b.add_weighted_edge(u, v, w).map_err(|e| err(lineno, e.to_string()))?;
        } else {
            b.add_edge(u, v).map_err(|e| err(lineno, e.to_string()))?;
        }
        edges += 1;
    }
    let Some((_, m, _)) = header else {
        return Err(err(last_line.max(1), "missing header".into()));
    };
    if edges != m {
        return Err(err(last_line, format!("header announces {m} edges, found {edges}")));
    }
    let graph = builder.expect("builder exists after header").build()?;
    Ok(EdgeList { graph, comments })
}

pub fn read_edge_list(path: &Path) -> ToolResult<EdgeList> {
    let text = std::fs::read_to_string(path).map_err(|e| ToolError::io(path, e))?;
    parse_edge_list(&text, &path.display().to_string())
}

pub fn write_text(path: &Path, text: &str) -> ToolResult<()> {
    std::fs::write(path, text).map_err(|e| ToolError::io(path, e))
}

fn push_comments(out: &mut String, comments: &[String]) {
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
}

/// The edges `ids` of `g`, with `g`'s weights if it has any.
pub fn format_subgraph(g: &Graph, ids: &[usize], comments: &[String]) -> String {
    let mut out = String::new();
    push_comments(&mut out, comments);
    if g.is_weighted() {
        let _ = writeln!(out, "{} {} weighted", g.n(), ids.len());
    } else {
        let _ = writeln!(out, "{} {}", g.n(), ids.len());
    }
    for &id in ids {
        let e = g.edge(id);
        if g.is_weighted() {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, g.weight(id));
        } else {
            let _ = writeln!(out, "{} {}", e.u, e.v);
        }
    }
    out
}

pub fn format_graph(g: &Graph, comments: &[String]) -> String {
    let ids: Vec<usize> = (0..g.m()).collect();
    format_subgraph(g, &ids, comments)
}

pub fn format_emulator(e: &Emulator, comments: &[String]) -> String {
    let mut out = String::new();
    push_comments(&mut out, comments);
    let _ = writeln!(out, "{} {} weighted", e.n, e.edges.len());
    for &(u, v, w) in &e.edges {
        let _ = writeln!(out, "{u} {v} {w}");
    }
    out
}

/// One line per delivered message: `round u→v origin r dist`.
pub fn format_trace(t: &SimTranscript) -> Option<String> {
    let log = t.log.as_ref()?;
    let mut out = String::new();
    for m in log {
        let _ = writeln!(
            out,
            "{} {}→{} {} {} {}",
            m.round, m.from, m.to, m.msg.origin, m.msg.r_value, m.msg.dist
        );
    }
    Some(out)
}

/// `source,target,estimate,exact,ratio` rows; ratio is empty when the exact
/// distance is zero or infinite.
pub fn format_distance_csv(rows: &[(usize, usize, f64, f64)]) -> String {
    let mut out = String::from("source,target,estimate,exact,ratio\n");
    for &(s, t, est, exact) in rows {
        let ratio = if exact > 0.0 && exact.is_finite() {
            (est / exact).to_string()
        } else {
            String::new()
        };
        let _ = writeln!(out, "{s},{t},{est},{exact},{ratio}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> ToolResult<EdgeList> {
        parse_edge_list(text, "t")
    }

    fn line_of(e: ToolError) -> usize {
        match e {
            ToolError::Parse { line, .. } => line,
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let f = parse("# k 3\n\n3 2\n0 1\n# middle\n1 2\n").unwrap();
        assert_eq!(f.graph.m(), 2);
        assert_eq!(f.meta("k"), Some("3"));
        assert_eq!(f.comments.len(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of(parse("3 2\n0 1\n0 1\n").unwrap_err()), 3);
        assert_eq!(line_of(parse("3 2\n0 1\n1 0\n").unwrap_err()), 3);
        assert_eq!(line_of(parse("3 1\n0 3\n").unwrap_err()), 2);
        assert_eq!(line_of(parse("3 1\n1 1\n").unwrap_err()), 2);
        assert_eq!(line_of(parse("3 2\n0 1\n").unwrap_err()), 2);
        assert_eq!(line_of(parse("3 1\n0 1\n1 2\n").unwrap_err()), 3);
        assert_eq!(line_of(parse("x 1\n").unwrap_err()), 1);
        assert_eq!(line_of(parse("3 1 weighted\n0 1\n").unwrap_err()), 2);
        assert_eq!(line_of(parse("3 1 weighted\n0 1 -2\n").unwrap_err()), 2);
        assert!(parse("# only comments\n").is_err());
    }

    #[test]
    fn weighted_round_trip_is_exact() {
        let text = "4 3 weighted\n0 1 2.5\n1 2 0.1\n2 3 12345.678901234\n";
        let f = parse(text).unwrap();
        assert_eq!(format_graph(&f.graph, &[]), text);
    }
}
