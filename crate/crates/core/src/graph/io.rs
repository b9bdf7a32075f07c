//! Graph file formats: a line-oriented text form and a JSON mirror.
//!
//! Text form, one edge per line in index order:
//!
//! ```text
//! bipartite 2 2
//! edge 0 0
//! edge 0 1
//! edge 1 0
//! edge 1 1
//! ```
//!
//! or `graph <n>` for a general graph. Bipartite edge endpoints are local to
//! their layer (`u < |U|`, `v < |V|`).

use super::{BipartiteGraph, Graph, GraphError, Result};
use serde::{Deserialize, Serialize};

/// Parsed graph input, either kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphInput {
    Bipartite {
        size_u: usize,
        size_v: usize,
        edges: Vec<(usize, usize)>,
    },
    General {
        n: usize,
        edges: Vec<(usize, usize)>,
    },
}

impl GraphInput {
    pub fn as_bipartite(&self) -> Result<BipartiteGraph> {
        match self {
            GraphInput::Bipartite {
                size_u,
                size_v,
                edges,
            } => BipartiteGraph::new(*size_u, *size_v, edges.clone()),
            GraphInput::General { .. } => Err(GraphError::Parse(
                "problem needs a bipartite graph (header `bipartite <|U|> <|V|>`)".into(),
            )),
        }
    }

    /// Any input as a general graph; bipartite vertices are renumbered with
    /// the v-layer offset by `|U|`.
    pub fn as_general(&self) -> Result<Graph> {
        match self {
            GraphInput::Bipartite { .. } => Ok(self.as_bipartite()?.to_general()),
            GraphInput::General { n, edges } => Graph::new(*n, edges.clone()),
        }
    }
}

/// Parse either format; JSON is detected by a leading `{`.
pub fn read_graph_str(text: &str) -> Result<GraphInput> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let input: GraphInput = serde_json::from_str(trimmed)
            .map_err(|e| GraphError::Parse(format!("bad graph JSON: {e}")))?;
        // run the constructors for validation
        match &input {
            GraphInput::Bipartite { .. } => {
                input.as_bipartite()?;
            }
            GraphInput::General { .. } => {
                input.as_general()?;
            }
        }
        return Ok(input);
    }
    parse_text(text)
}

fn parse_text(text: &str) -> Result<GraphInput> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| GraphError::Parse("empty graph file".into()))?;
    let mut head = header.split_whitespace();
    let kind = head.next().unwrap_or_default();

    let mut edges = Vec::new();
    for line in lines {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("edge") => {
                let a = parse_usize(parts.next(), line)?;
                let b = parse_usize(parts.next(), line)?;
                edges.push((a, b));
            }
            Some(token) => {
                return Err(GraphError::Parse(format!(
                    "unexpected token `{token}` (expected `edge u v`)"
                )))
            }
            None => {}
        }
    }

    match kind {
        "bipartite" => {
            let size_u = parse_usize(head.next(), header)?;
            let size_v = parse_usize(head.next(), header)?;
            BipartiteGraph::new(size_u, size_v, edges.clone())?;
            Ok(GraphInput::Bipartite {
                size_u,
                size_v,
                edges,
            })
        }
        "graph" => {
            let n = parse_usize(head.next(), header)?;
            Graph::new(n, edges.clone())?;
            Ok(GraphInput::General { n, edges })
        }
        other => Err(GraphError::Parse(format!(
            "unknown header `{other}` (expected `bipartite` or `graph`)"
        ))),
    }
}

fn parse_usize(tok: Option<&str>, line: &str) -> Result<usize> {
    tok.ok_or_else(|| GraphError::Parse(format!("missing field in `{line}`")))?
        .parse()
        .map_err(|_| GraphError::Parse(format!("bad integer in `{line}`")))
}

pub fn write_graph_text(input: &GraphInput) -> String {
    let mut out = String::new();
    match input {
        GraphInput::Bipartite {
            size_u,
            size_v,
            edges,
        } => {
            out.push_str(&format!("bipartite {size_u} {size_v}\n"));
            for (u, v) in edges {
                out.push_str(&format!("edge {u} {v}\n"));
            }
        }
        GraphInput::General { n, edges } => {
            out.push_str(&format!("graph {n}\n"));
            for (a, b) in edges {
                out.push_str(&format!("edge {a} {b}\n"));
            }
        }
    }
    out
}

pub fn write_graph_json(input: &GraphInput) -> String {
    serde_json::to_string_pretty(input).expect("graph serializes")
}
