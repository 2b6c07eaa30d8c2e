//! Splitting a graph into maximal paths through degree-two vertices.

use serde::Serialize;

use crate::graph::Graph;

/// How a chain ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EndKind {
    /// A vertex of degree at least three.
    High,
    /// A vertex of degree one.
    Leaf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainShape {
    Path {
        length: usize,
        start: EndKind,
        end: EndKind,
    },
    /// A cycle; `through_high` when one vertex of it has degree at least three.
    Cycle {
        length: usize,
        through_high: bool,
    },
}

impl ChainShape {
    pub fn path(length: usize, start: EndKind, end: EndKind) -> Self {
        ChainShape::Path { length, start, end }
    }

    pub fn cycle(length: usize, through_high: bool) -> Self {
        ChainShape::Cycle { length, through_high }
    }

    pub fn length(&self) -> usize {
        match *self {
            ChainShape::Path { length, .. } | ChainShape::Cycle { length, .. } => length,
        }
    }

    /// Chain ends at high-degree vertices, in order: start, then end.
    pub fn slots(&self) -> Vec<Slot> {
        match *self {
            ChainShape::Path { start, end, .. } => {
                let mut s = Vec::new();
                if start == EndKind::High {
                    s.push(Slot::Start);
                }
                if end == EndKind::High {
                    s.push(Slot::End);
                }
                s
            }
            ChainShape::Cycle { through_high: true, .. } => vec![Slot::Start, Slot::End],
            ChainShape::Cycle { through_high: false, .. } => vec![],
        }
    }

    pub fn reversed(&self) -> Self {
        match *self {
            ChainShape::Path { length, start, end } => ChainShape::Path { length, start: end, end: start },
            c => c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    Start,
    End,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub shape: ChainShape,
    /// `length + 1` vertices; a cycle repeats its first vertex at the end.
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Chain {
    pub fn slot_vertex(&self, slot: Slot) -> usize {
        match slot {
            Slot::Start => self.vertices[0],
            Slot::End => *self.vertices.last().expect("chains are nonempty"),
        }
    }

    pub fn slot_edge(&self, slot: Slot) -> usize {
        match slot {
            Slot::Start => self.edges[0],
            Slot::End => *self.edges.last().expect("chains are nonempty"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainFamily {
    pub chains: Vec<Chain>,
    /// Vertices of degree at least three, ascending.
    pub high: Vec<usize>,
    pub degree_two: Vec<usize>,
    pub leaves: Vec<usize>,
}

fn end_kind(g: &Graph, v: usize) -> EndKind {
    if g.degree(v) >= 3 {
        EndKind::High
    } else {
        EndKind::Leaf
    }
}

/// Follows `first` away from `from` until a vertex of degree other than two
/// (or `from` again) is reached.
fn walk(g: &Graph, from: usize, first: usize, used: &mut [bool]) -> (Vec<usize>, Vec<usize>) {
    let mut vertices = vec![from];
    let mut edges = vec![];
    let (mut at, mut e) = (from, first);
    loop {
        used[e] = true;
        edges.push(e);
        at = g.other(e, at);
        vertices.push(at);
        if g.degree(at) != 2 || at == from {
            return (vertices, edges);
        }
        e = g.neighbors(at).iter().map(|&(_, f)| f).find(|&f| f != e).expect("degree two");
    }
}

/// Partitions the edges of `g` into chains. Paths come first, ordered by start
/// vertex and first edge; cycles of degree-two vertices follow.
pub fn chain_decompose(g: &Graph) -> ChainFamily {
    let mut used = vec![false; g.m()];
    let mut chains = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) == 2 || g.degree(v) == 0 {
            continue;
        }
        for &(_, e) in g.neighbors(v) {
            if used[e] {
                continue;
            }
            let (vertices, edges) = walk(g, v, e, &mut used);
            let last = *vertices.last().expect("nonempty");
            let shape = if last == v {
                ChainShape::cycle(edges.len(), true)
            } else {
                ChainShape::path(edges.len(), end_kind(g, v), end_kind(g, last))
            };
            chains.push(Chain { shape, vertices, edges });
        }
    }
    for e in 0..g.m() {
        if !used[e] {
            let (v, _) = g.edge(e);
            let (vertices, edges) = walk(g, v, e, &mut used);
            chains.push(Chain { shape: ChainShape::cycle(edges.len(), false), vertices, edges });
        }
    }
    let class = |pred: fn(usize) -> bool| (0..g.n()).filter(|&v| pred(g.degree(v))).collect::<Vec<_>>();
    ChainFamily { chains, high: class(|d| d >= 3), degree_two: class(|d| d == 2), leaves: class(|d| d == 1) }
}
