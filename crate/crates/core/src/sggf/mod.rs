//! Small-gap general factor: given a multigraph and a set `A_v` per vertex,
//! find edges `S` with `deg_S(v) ∈ A_v` for every `v`.

mod gadget;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{ParseError, SggfError};
use crate::graph::MultiGraph;
use crate::io::{edge_args, parse_usize, records};
use crate::matching::max_matching;

pub use gadget::{
    build_vertex_gadget, gadget_accepts, validate_vertex_gadget, GadgetPiece, GadgetViolation, VertexGadget,
};

/// True iff between the minimum and maximum no two consecutive integers are
/// both missing.
pub fn is_small_gap(members: &[u32]) -> bool {
    let set: BTreeSet<u32> = members.iter().copied().collect();
    set.iter().zip(set.iter().skip(1)).all(|(a, b)| b - a <= 2)
}

/// A sorted, duplicate-free small-gap set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct GapSet(Vec<u32>);

impl GapSet {
    pub fn new(members: impl IntoIterator<Item = u32>) -> Result<Self, SggfError> {
        let set: BTreeSet<u32> = members.into_iter().collect();
        let v: Vec<u32> = set.into_iter().collect();
        if !is_small_gap(&v) {
            return Err(SggfError::NotSmallGap { set: v });
        }
        Ok(GapSet(v))
    }

    pub fn members(&self) -> &[u32] {
        &self.0
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<u32>> for GapSet {
    type Error = SggfError;

    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        GapSet::new(v)
    }
}

impl From<GapSet> for Vec<u32> {
    fn from(s: GapSet) -> Self {
        s.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SggfInstance {
    graph: MultiGraph,
    sets: Vec<GapSet>,
}

impl SggfInstance {
    pub fn new(graph: MultiGraph, sets: Vec<GapSet>) -> Result<Self, SggfError> {
        if sets.len() != graph.n() {
            return Err(SggfError::SetCount { sets: sets.len(), vertices: graph.n() });
        }
        if let Some(vertex) = sets.iter().position(GapSet::is_empty) {
            return Err(SggfError::EmptySet { vertex });
        }
        Ok(SggfInstance { graph, sets })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn sets(&self) -> &[GapSet] {
        &self.sets
    }

    /// Whether `s` (edge ids) meets every vertex constraint.
    pub fn is_solution(&self, s: &[usize]) -> bool {
        let mut deg = vec![0u32; self.graph.n()];
        for &e in s {
            let (u, v) = self.graph.edge(e);
            deg[u] += 1;
            deg[v] += 1;
        }
        deg.iter().zip(&self.sets).all(|(&d, a)| a.contains(d))
    }
}

/// Parses the graph format extended with `a <v> <i1> <i2> ...` lines, one per
/// vertex.
pub fn parse_sggf(text: &str) -> Result<SggfInstance, ParseError> {
    let rec = records(text)?;
    let mut g = MultiGraph::new(rec.n);
    let mut sets: Vec<Option<GapSet>> = vec![None; rec.n];
    for (line, kind, args) in rec.items {
        match kind {
            "e" => {
                let (u, v) = edge_args(line, &args)?;
                g.add_edge(u, v).map_err(|e| ParseError::new(line, e.to_string()))?;
            }
            "a" => {
                let (&first, rest) = args.split_first().ok_or_else(|| ParseError::new(line, "set needs a vertex"))?;
                let v = parse_usize(line, first)?;
                if v >= rec.n {
                    return Err(ParseError::new(line, format!("vertex {v} out of range")));
                }
                if sets[v].is_some() {
                    return Err(ParseError::new(line, format!("second set for vertex {v}")));
                }
                let members = rest
                    .iter()
                    .map(|t| t.parse::<u32>().map_err(|_| ParseError::new(line, format!("bad member `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                let set = GapSet::new(members).map_err(|e| ParseError::new(line, e.to_string()))?;
                if set.is_empty() {
                    return Err(ParseError::new(line, format!("empty set for vertex {v}")));
                }
                sets[v] = Some(set);
            }
            other => return Err(ParseError::new(line, format!("unknown record `{other}`"))),
        }
    }
    let sets = sets
        .into_iter()
        .enumerate()
        .map(|(v, s)| s.ok_or_else(|| ParseError::new(0, format!("no set given for vertex {v}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SggfInstance::new(g, sets).expect("checked while parsing"))
}

pub fn write_sggf(inst: &SggfInstance) -> String {
    let mut out = crate::io::write_multigraph(&inst.graph);
    for (v, a) in inst.sets.iter().enumerate() {
        out.push_str(&format!("a {v}"));
        for x in a.members() {
            out.push_str(&format!(" {x}"));
        }
        out.push('\n');
    }
    out
}

pub const ORACLE_EDGE_LIMIT: usize = 25;

/// Exhaustive search. Candidate sets are compared as sorted edge-id lists in
/// lexicographic order, and the smallest solution is returned.
pub fn solve_sggf_oracle(inst: &SggfInstance) -> Result<Option<Vec<usize>>, SggfError> {
    let m = inst.graph.m();
    if m > ORACLE_EDGE_LIMIT {
        return Err(SggfError::TooManyEdges { edges: m, limit: ORACLE_EDGE_LIMIT });
    }
    fn go(inst: &SggfInstance, from: usize, chosen: &mut Vec<usize>, deg: &mut Vec<u32>) -> bool {
        if deg.iter().zip(&inst.sets).all(|(&d, a)| a.contains(d)) {
            return true;
        }
        for e in from..inst.graph.m() {
            let (u, v) = inst.graph.edge(e);
            chosen.push(e);
            deg[u] += 1;
            deg[v] += 1;
            if go(inst, e + 1, chosen, deg) {
                return true;
            }
            deg[u] -= 1;
            deg[v] -= 1;
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    let mut deg = vec![0; inst.graph.n()];
    Ok(go(inst, 0, &mut chosen, &mut deg).then_some(chosen))
}

/// The matching graph for one choice of gadget piece per vertex, with the
/// auxiliary edge id of every original edge.
fn assemble(inst: &SggfInstance, gadgets: &[VertexGadget], choice: &[usize]) -> (MultiGraph, Vec<usize>) {
    let g = &inst.graph;
    let mut aux = MultiGraph::new(0);
    let mut stub = vec![[usize::MAX; 2]; g.m()];
    let mut ports = Vec::new();
    for v in 0..g.n() {
        let piece = gadgets[v].pieces[choice[v]];
        let d = g.degree(v);
        let base = aux.n();
        for _ in 0..d + piece.internal_nodes() {
            aux.add_vertex();
        }
        for (i, &(w, e)) in g.neighbors(v).iter().enumerate() {
            // Each edge appears once at either end; the side is fixed by
            // comparing endpoints, with parallel copies told apart by id.
            let side = if v < w { 0 } else { 1 };
            stub[e][side] = base + i;
        }
        for (a, b) in piece.edges(d) {
            aux.add_edge(base + a, base + b).expect("gadget nodes exist");
        }
        if let Some(p) = piece.port_node(d) {
            ports.push(base + p);
        }
    }
    let originals: Vec<usize> =
        stub.iter().map(|s| aux.add_edge(s[0], s[1]).expect("stubs of distinct vertices")).collect();
    for (i, &p) in ports.iter().enumerate() {
        for &q in &ports[i + 1..] {
            aux.add_edge(p, q).expect("distinct ports");
        }
    }
    if aux.n() % 2 == 1 && !ports.is_empty() {
        let z = aux.add_vertex();
        for &p in &ports {
            aux.add_edge(z, p).expect("distinct nodes");
        }
    }
    (aux, originals)
}

/// Solves an instance through vertex gadgets and a maximum matching.
///
/// Vertices whose set is neither an interval nor a step-two progression get
/// several gadget pieces; every combination is tried in order, so the running
/// time is polynomial when each set needs a single piece (as in every instance
/// built from a star-forest problem).
pub fn solve_sggf(inst: &SggfInstance) -> Result<Option<Vec<usize>>, SggfError> {
    let g = &inst.graph;
    let gadgets: Vec<VertexGadget> = (0..g.n()).map(|v| build_vertex_gadget(g.degree(v), &inst.sets[v])).collect();
    if gadgets.iter().any(|gd| gd.pieces.is_empty()) {
        return Ok(None);
    }
    let mut choice = vec![0; g.n()];
    loop {
        let (aux, originals) = assemble(inst, &gadgets, &choice);
        let m = max_matching(&aux);
        if 2 * m.len() == aux.n() {
            let s: Vec<usize> = (0..g.m()).filter(|&e| m.binary_search(&originals[e]).is_ok()).collect();
            if !inst.is_solution(&s) {
                return Err(SggfError::GadgetInvalid);
            }
            return Ok(Some(s));
        }
        let Some(v) = (0..g.n()).rev().find(|&v| choice[v] + 1 < gadgets[v].pieces.len()) else {
            return Ok(None);
        };
        choice[v] += 1;
        for c in &mut choice[v + 1..] {
            *c = 0;
        }
    }
}
