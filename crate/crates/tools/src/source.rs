//! Where an input graph comes from: a file or a generator spec.

use std::path::PathBuf;

use spanner_core::graph::{generate, Model};
use spanner_core::Graph;

use crate::error::{ToolError, ToolResult};
use crate::io::{read_edge_list, EdgeList};

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Generated(Model),
}

fn field<T: std::str::FromStr>(spec: &str, s: &str) -> ToolResult<T> {
    s.parse()
        .map_err(|_| ToolError::Usage(format!("bad number {s:?} in graph spec {spec:?}")))
}

/// Parses `er:n:p`, `grid:w:h`, `path:n`, `cycle:n`, `complete:n`,
/// `star:leaves` and `rw:n:p:wmax`; anything else is a file path.
pub fn parse_source(spec: &str) -> ToolResult<GraphSource> {
    let parts: Vec<&str> = spec.split(':').collect();
    let model = match parts.as_slice() {
        ["er", n, p] => Model::ErdosRenyi {
            n: field(spec, n)?,
            p: field(spec, p)?,
        },
        ["grid", w, h] => Model::Grid {
            w: field(spec, w)?,
            h: field(spec, h)?,
        },
        ["path", n] => Model::Path { n: field(spec, n)? },
        ["cycle", n] => Model::Cycle { n: field(spec, n)? },
        ["complete", n] => Model::Complete { n: field(spec, n)? },
        ["star", l] => Model::Star { leaves: field(spec, l)? },
        ["rw", n, p, w] => Model::RandomWeighted {
            n: field(spec, n)?,
            p: field(spec, p)?,
            wmax: field(spec, w)?,
        },
        [kind, ..] if ["er", "grid", "path", "cycle", "complete", "star", "rw"].contains(kind) => {
            return Err(ToolError::Usage(format!("malformed graph spec {spec:?}")))
        }
        _ => return Ok(GraphSource::File(PathBuf::from(spec))),
    };
    Ok(GraphSource::Generated(model))
}

/// Loads the graph; generators draw from `seed`.
pub fn load(spec: &str, seed: u64) -> ToolResult<EdgeList> {
    match parse_source(spec)? {
        GraphSource::File(p) => read_edge_list(&p),
        GraphSource::Generated(m) => Ok(EdgeList {
            graph: generate(m, seed).map_err(|e| ToolError::Usage(e.to_string()))?,
            comments: Vec::new(),
        }),
    }
}

pub fn load_graph(spec: &str, seed: u64) -> ToolResult<Graph> {
    Ok(load(spec, seed)?.graph)
}
