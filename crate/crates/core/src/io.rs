//! Plain-text graph format and JSON decomposition certificates.
//!
//! The graph format is line based: `#` starts a comment line, a single header
//! `g <n>` gives the vertex count, and each `e <u> <v>` line adds an edge.

use serde::{Deserialize, Serialize};

use crate::error::{GraphError, ParseError};
use crate::graph::{Decomposition, DecompositionSpec, Graph, Label, MultiGraph};

/// Tokenised lines of the graph format: the header and `(line, kind, args)` records.
pub(crate) struct Records<'a> {
    pub n: usize,
    pub items: Vec<(usize, &'a str, Vec<&'a str>)>,
}

pub(crate) fn records(text: &str) -> Result<Records<'_>, ParseError> {
    let mut n = None;
    let mut items = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut parts = t.split_whitespace();
        let kind = parts.next().unwrap();
        let args: Vec<&str> = parts.collect();
        if kind == "g" {
            if n.is_some() {
                return Err(ParseError::new(line, "duplicate header"));
            }
            if args.len() != 1 {
                return Err(ParseError::new(line, "header must be `g <n>`"));
            }
            n = Some(parse_usize(line, args[0])?);
            continue;
        }
        if n.is_none() {
            return Err(ParseError::new(line, "record before the `g <n>` header"));
        }
        items.push((line, kind, args));
    }
    let n = n.ok_or_else(|| ParseError::new(0, "missing `g <n>` header"))?;
    Ok(Records { n, items })
}

pub(crate) fn parse_usize(line: usize, s: &str) -> Result<usize, ParseError> {
    s.parse().map_err(|_| ParseError::new(line, format!("expected a non-negative integer, got `{s}`")))
}

pub(crate) fn edge_args(line: usize, args: &[&str]) -> Result<(usize, usize), ParseError> {
    if args.len() != 2 {
        return Err(ParseError::new(line, "edge must be `e <u> <v>`"));
    }
    Ok((parse_usize(line, args[0])?, parse_usize(line, args[1])?))
}

fn graph_error(line: usize, e: GraphError) -> ParseError {
    ParseError::new(line, e.to_string())
}

/// Parses a simple graph.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let rec = records(text)?;
    let mut g = Graph::new(rec.n);
    for (line, kind, args) in rec.items {
        match kind {
            "e" => {
                let (u, v) = edge_args(line, &args)?;
                g.add_edge(u, v).map_err(|e| graph_error(line, e))?;
            }
            other => return Err(ParseError::new(line, format!("unknown record `{other}`"))),
        }
    }
    Ok(g)
}

/// Parses a multigraph; repeated `e` lines give parallel edges.
pub fn parse_multigraph(text: &str) -> Result<MultiGraph, ParseError> {
    let rec = records(text)?;
    let mut g = MultiGraph::new(rec.n);
    for (line, kind, args) in rec.items {
        match kind {
            "e" => {
                let (u, v) = edge_args(line, &args)?;
                g.add_edge(u, v).map_err(|e| graph_error(line, e))?;
            }
            other => return Err(ParseError::new(line, format!("unknown record `{other}`"))),
        }
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    write_edges(g.n(), g.edges())
}

pub fn write_multigraph(g: &MultiGraph) -> String {
    write_edges(g.n(), g.edges())
}

fn write_edges(n: usize, edges: &[(usize, usize)]) -> String {
    let mut out = format!("g {n}\n");
    for &(u, v) in edges {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

/// JSON form of a decomposition: labels are listed in edge order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub spec: DecompositionSpec,
    pub labels: Vec<Label>,
}

impl Certificate {
    pub fn of(d: &Decomposition) -> Self {
        Certificate { spec: d.spec, labels: d.labels.clone() }
    }

    pub fn attach(self, graph: Graph) -> Result<Decomposition, GraphError> {
        Decomposition::new(graph, self.labels, self.spec)
    }
}
