//! Graphs, decomposition specifications and the decomposition validator.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GraphError;

/// Upper bound on a component size; `Infinite` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KBound {
    Finite(u32),
    Infinite,
}

impl KBound {
    /// True when a component with `size` edges fits under the bound.
    pub fn admits(self, size: usize) -> bool {
        match self {
            KBound::Finite(b) => size <= b as usize,
            KBound::Infinite => true,
        }
    }

    /// The bound as a `usize`, saturating to `usize::MAX` for `Infinite`.
    pub fn as_usize(self) -> usize {
        match self {
            KBound::Finite(b) => b as usize,
            KBound::Infinite => usize::MAX,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            KBound::Finite(b) => Some(b),
            KBound::Infinite => None,
        }
    }
}

impl fmt::Display for KBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KBound::Finite(b) => write!(f, "{b}"),
            KBound::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for KBound {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(KBound::Infinite);
        }
        match t.parse::<u32>() {
            Ok(0) => Err("bound must be at least 1".to_string()),
            Ok(b) => Ok(KBound::Finite(b)),
            Err(_) => Err(format!("invalid bound `{s}`: expected a positive integer or `inf`")),
        }
    }
}

impl Serialize for KBound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            KBound::Finite(b) => s.serialize_u32(*b),
            KBound::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for KBound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(0) => Err(serde::de::Error::custom("bound must be at least 1")),
            Raw::Num(b) => Ok(KBound::Finite(b)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Which side of a decomposition an edge belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Matching,
    Forest,
}

impl Label {
    pub fn short(self) -> char {
        match self {
            Label::Matching => 'M',
            Label::Forest => 'F',
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Matching => "matching",
            Label::Forest => "forest",
        })
    }
}

/// The two decomposition targets.
///
/// `Linear { k, l }`: the forest side is a `k`-bounded linear forest and the
/// matching side an `l`-bounded linear forest (`l = 1` is a matching).
/// `Star { k }`: a matching plus a star forest whose stars have at most `k` edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum DecompositionSpec {
    Linear { k: KBound, l: KBound },
    Star { k: KBound },
}

impl DecompositionSpec {
    pub fn linear(k: u32) -> Self {
        DecompositionSpec::Linear { k: KBound::Finite(k), l: KBound::Finite(1) }
    }

    pub fn star(k: KBound) -> Self {
        DecompositionSpec::Star { k }
    }
}

impl fmt::Display for DecompositionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionSpec::Linear { k, l } => write!(f, "LINEAR({k},{l})"),
            DecompositionSpec::Star { k } => write!(f, "STAR({k})"),
        }
    }
}

/// A finite simple undirected graph with vertices `0..n` and indexed edges.
///
/// Edges keep their insertion order and are stored with the smaller endpoint
/// first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
    index: HashMap<(usize, usize), usize>,
}

impl Default for Graph {
    fn default() -> Self {
        Graph::new(0)
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n], index: HashMap::new() }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    /// Adds the edge `uv` and returns its index.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize, GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        let key = (u.min(v), u.max(v));
        if self.index.contains_key(&key) {
            return Err(GraphError::DuplicateEdge { u: key.0, v: key.1 });
        }
        let id = self.edges.len();
        self.edges.push(key);
        self.index.insert(key, id);
        self.adj[u].push((v, id));
        self.adj[v].push((u, id));
        Ok(id)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// `(neighbour, edge index)` pairs in insertion order.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// `profile[d]` is the number of vertices of degree `d`.
    pub fn degree_profile(&self) -> Vec<usize> {
        let mut profile = vec![0; self.max_degree() + 1];
        for a in &self.adj {
            profile[a.len()] += 1;
        }
        profile
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &(w, _) in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The subgraph induced by `vertices`, renumbered in the given order.
    /// Returns it with the host index of every subgraph edge.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut local = HashMap::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            local.insert(v, i);
        }
        let mut sub = Graph::new(vertices.len());
        let mut map = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if let (Some(&a), Some(&b)) = (local.get(&u), local.get(&v)) {
                sub.add_edge(a, b).expect("induced subgraph of a simple graph is simple");
                map.push(e);
            }
        }
        (sub, map)
    }
}

/// A loopless multigraph; parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl MultiGraph {
    pub fn new(n: usize) -> Self {
        MultiGraph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = MultiGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize, GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        let id = self.edges.len();
        self.edges.push((u.min(v), u.max(v)));
        self.adj[u].push((v, id));
        self.adj[v].push((u, id));
        Ok(id)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }
}

impl From<&Graph> for MultiGraph {
    fn from(g: &Graph) -> Self {
        MultiGraph { n: g.n, edges: g.edges.clone(), adj: g.adj.clone() }
    }
}

/// A labelled edge partition of a graph under a spec.
///
/// Construction only checks shape; call [`Decomposition::validate`] to check
/// the structural constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub graph: Graph,
    pub labels: Vec<Label>,
    pub spec: DecompositionSpec,
}

impl Decomposition {
    pub fn new(graph: Graph, labels: Vec<Label>, spec: DecompositionSpec) -> Result<Self, GraphError> {
        if labels.len() != graph.m() {
            return Err(GraphError::LabelCount { labels: labels.len(), edges: graph.m() });
        }
        Ok(Decomposition { graph, labels, spec })
    }

    pub fn label(&self, e: usize) -> Label {
        self.labels[e]
    }

    pub fn edges_with(&self, label: Label) -> Vec<usize> {
        (0..self.labels.len()).filter(|&e| self.labels[e] == label).collect()
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_labels(&self.graph, &self.labels, self.spec)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

/// Which side of the partition a violation concerns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Matching,
    Forest,
}

impl From<Label> for Part {
    fn from(l: Label) -> Self {
        match l {
            Label::Matching => Part::Matching,
            Label::Forest => Part::Forest,
        }
    }
}

/// A structural reason why a labelling is not a decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Two matching edges share `vertex`.
    AdjacentMatching { vertex: usize, edges: [usize; 2] },
    /// A vertex has degree three or more inside a linear part.
    LinearDegree { part: Part, vertex: usize, degree: usize },
    /// A part contains a cycle through the listed vertices.
    Cycle { part: Part, vertices: Vec<usize> },
    /// A path component is longer than the bound.
    PathTooLong { part: Part, endpoints: [usize; 2], length: usize, bound: KBound },
    /// A star-side component is a tree that is not a star.
    NotAStar { vertices: Vec<usize> },
    /// A star has more edges than the bound.
    StarTooLarge { center: usize, size: usize, bound: KBound },
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::AdjacentMatching { .. } => "adjacent_matching",
            Violation::LinearDegree { .. } => "linear_degree",
            Violation::Cycle { .. } => "cycle",
            Violation::PathTooLong { .. } => "path_too_long",
            Violation::NotAStar { .. } => "not_a_star",
            Violation::StarTooLarge { .. } => "star_too_large",
        }
    }
}

/// Validates a labelling of `graph` against `spec`. An empty result means valid.
pub fn validate_labels(graph: &Graph, labels: &[Label], spec: DecompositionSpec) -> Vec<Violation> {
    assert_eq!(labels.len(), graph.m(), "one label per edge");
    let mut out = Vec::new();
    match spec {
        DecompositionSpec::Linear { k, l } => {
            validate_linear(graph, labels, Label::Forest, k, &mut out);
            if l == KBound::Finite(1) {
                validate_matching(graph, labels, &mut out);
            } else {
                validate_linear(graph, labels, Label::Matching, l, &mut out);
            }
        }
        DecompositionSpec::Star { k } => {
            validate_matching(graph, labels, &mut out);
            validate_star(graph, labels, k, &mut out);
        }
    }
    out
}

/// Checks a full decomposition. Equivalent to `d.validate()`.
pub fn validate_decomposition(d: &Decomposition) -> Vec<Violation> {
    d.validate()
}

fn validate_matching(graph: &Graph, labels: &[Label], out: &mut Vec<Violation>) {
    for v in 0..graph.n() {
        let mut first = None;
        for &(_, e) in graph.neighbors(v) {
            if labels[e] != Label::Matching {
                continue;
            }
            match first {
                None => first = Some(e),
                Some(f) => {
                    out.push(Violation::AdjacentMatching { vertex: v, edges: [f.min(e), f.max(e)] });
                    break;
                }
            }
        }
    }
}

/// Components of the subgraph formed by edges with `label`, each with its edges.
fn part_components(graph: &Graph, labels: &[Label], label: Label) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut seen = vec![false; graph.n()];
    let mut out = Vec::new();
    for s in 0..graph.n() {
        if seen[s] || !graph.neighbors(s).iter().any(|&(_, e)| labels[e] == label) {
            continue;
        }
        seen[s] = true;
        let mut verts = vec![s];
        let mut edges = Vec::new();
        let mut i = 0;
        while i < verts.len() {
            let v = verts[i];
            i += 1;
            for &(w, e) in graph.neighbors(v) {
                if labels[e] != label {
                    continue;
                }
                if v < w {
                    edges.push(e);
                }
                if !seen[w] {
                    seen[w] = true;
                    verts.push(w);
                }
            }
        }
        out.push((verts, edges));
    }
    out
}

fn part_degree(graph: &Graph, labels: &[Label], label: Label, v: usize) -> usize {
    graph.neighbors(v).iter().filter(|&&(_, e)| labels[e] == label).count()
}

fn validate_linear(graph: &Graph, labels: &[Label], label: Label, bound: KBound, out: &mut Vec<Violation>) {
    let part = Part::from(label);
    for (mut verts, edges) in part_components(graph, labels, label) {
        let mut bad_degree = false;
        for &v in &verts {
            let d = part_degree(graph, labels, label, v);
            if d >= 3 {
                bad_degree = true;
                out.push(Violation::LinearDegree { part, vertex: v, degree: d });
            }
        }
        if edges.len() >= verts.len() {
            verts.sort_unstable();
            out.push(Violation::Cycle { part, vertices: verts });
            continue;
        }
        if bad_degree {
            continue;
        }
        if !bound.admits(edges.len()) {
            let mut ends: Vec<usize> =
                verts.iter().copied().filter(|&v| part_degree(graph, labels, label, v) == 1).collect();
            ends.sort_unstable();
            out.push(Violation::PathTooLong { part, endpoints: [ends[0], ends[1]], length: edges.len(), bound });
        }
    }
}

fn validate_star(graph: &Graph, labels: &[Label], bound: KBound, out: &mut Vec<Violation>) {
    for (mut verts, edges) in part_components(graph, labels, Label::Forest) {
        if edges.len() >= verts.len() {
            verts.sort_unstable();
            out.push(Violation::Cycle { part: Part::Forest, vertices: verts });
            continue;
        }
        let center = verts
            .iter()
            .copied()
            .max_by_key(|&v| (part_degree(graph, labels, Label::Forest, v), std::cmp::Reverse(v)))
            .expect("component is non-empty");
        if part_degree(graph, labels, Label::Forest, center) != edges.len() {
            verts.sort_unstable();
            out.push(Violation::NotAStar { vertices: verts });
            continue;
        }
        if !bound.admits(edges.len()) {
            // A single edge has two candidate centres; report the smaller.
            let c = if edges.len() == 1 { verts.iter().copied().min().unwrap() } else { center };
            out.push(Violation::StarTooLarge { center: c, size: edges.len(), bound });
        }
    }
}
