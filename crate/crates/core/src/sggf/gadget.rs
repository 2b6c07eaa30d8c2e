//! Vertex gadgets for the reduction of small-gap general factor to perfect
//! matching.
//!
//! A vertex `v` of degree `d` becomes `d` external stubs, one per incident
//! edge, plus internal nodes. A stub matched to the stub at the other end of
//! its edge is "outward"; the rest must be covered inside the gadget.
//!
//! A single gadget cannot accept every small-gap set: with a fixed node
//! count, a perfect matching of the gadget minus `T` forces a fixed parity of
//! `|T|` unless some node can leave the gadget. Each gadget is therefore a
//! list of alternative pieces:
//!
//! * interval `[a, b]`: `d - b` core nodes and `b - a` slack nodes, all joined
//!   to every stub; slack nodes form a clique; one parity port joined to every
//!   slack node (only when `b > a`). The port is either matched inside or
//!   handed to a global pool of ports.
//! * progression `{a, a+2, ..., b}`: as above with no port.
//!
//! A piece accepts outward count `t` exactly when `t` lies in its set, using
//! the port internally iff `t - a` is odd. An empty set has no pieces.

use serde::Serialize;

use super::GapSet;
use crate::graph::MultiGraph;
use crate::matching::has_perfect_matching;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GadgetPiece {
    pub core: usize,
    pub slack: usize,
    pub port: bool,
}

impl GadgetPiece {
    pub fn interval(d: usize, a: usize, b: usize) -> Self {
        GadgetPiece { core: d - b, slack: b - a, port: b > a }
    }

    pub fn progression(d: usize, a: usize, b: usize) -> Self {
        GadgetPiece { core: d - b, slack: b - a, port: false }
    }

    pub fn internal_nodes(&self) -> usize {
        self.core + self.slack + self.port as usize
    }

    /// Internal edges given node numbering: stubs `0..d`, then core, slack and
    /// the port.
    pub fn edges(&self, d: usize) -> Vec<(usize, usize)> {
        let core = d;
        let slack = core + self.core;
        let port = slack + self.slack;
        let mut out = Vec::new();
        for s in 0..d {
            for c in core..slack {
                out.push((s, c));
            }
            for c in slack..port {
                out.push((s, c));
            }
        }
        for a in slack..port {
            for b in a + 1..port {
                out.push((a, b));
            }
            if self.port {
                out.push((a, port));
            }
        }
        out
    }

    /// Index of the port among the piece's nodes (stubs included).
    pub fn port_node(&self, d: usize) -> Option<usize> {
        self.port.then_some(d + self.core + self.slack)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexGadget {
    pub degree: usize,
    pub set: GapSet,
    pub pieces: Vec<GadgetPiece>,
}

/// Splits `A ∩ [0, d]` into interval and progression pieces. Starting from the
/// smallest uncovered member, the longer of the maximal consecutive run and the
/// maximal step-two run is taken (the consecutive run wins ties).
pub fn build_vertex_gadget(d: usize, set: &GapSet) -> VertexGadget {
    let members: Vec<usize> = set.members().iter().map(|&x| x as usize).filter(|&x| x <= d).collect();
    let has = |x: usize| members.binary_search(&x).is_ok();
    let mut covered = vec![false; members.len()];
    let mut pieces = Vec::new();
    while let Some(i) = covered.iter().position(|&c| !c) {
        let a = members[i];
        let mut run = a;
        while has(run + 1) {
            run += 1;
        }
        let mut step = a;
        while has(step + 2) {
            step += 2;
        }
        let piece = if run - a >= (step - a) / 2 {
            GadgetPiece::interval(d, a, run)
        } else {
            GadgetPiece::progression(d, a, step)
        };
        let top = d - piece.core;
        for (j, &x) in members.iter().enumerate() {
            if x >= a && x <= top && (piece.port || (x - a).is_multiple_of(2)) {
                covered[j] = true;
            }
        }
        pieces.push(piece);
    }
    VertexGadget { degree: d, set: set.clone(), pieces }
}

fn piece_graph(d: usize, piece: &GadgetPiece, outward: &[bool], drop_port: bool) -> MultiGraph {
    let n = d + piece.internal_nodes();
    let mut keep = vec![true; n];
    for (s, &o) in outward.iter().enumerate() {
        keep[s] = !o;
    }
    if drop_port {
        keep[piece.port_node(d).expect("piece has a port")] = false;
    }
    let mut index = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        if keep[v] {
            index[v] = count;
            count += 1;
        }
    }
    let mut g = MultiGraph::new(count);
    for (a, b) in piece.edges(d) {
        if keep[a] && keep[b] {
            g.add_edge(index[a], index[b]).expect("valid nodes");
        }
    }
    g
}

/// Whether the gadget can absorb exactly the non-outward stubs.
pub fn gadget_accepts(g: &VertexGadget, outward: &[bool]) -> bool {
    g.pieces.iter().any(|p| {
        has_perfect_matching(&piece_graph(g.degree, p, outward, false))
            || (p.port && has_perfect_matching(&piece_graph(g.degree, p, outward, true)))
    })
}

/// A stub subset on which the gadget disagrees with its set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetViolation {
    pub outward: Vec<usize>,
    pub expected: bool,
}

/// Checks every subset of stubs with a matching engine.
pub fn validate_vertex_gadget(g: &VertexGadget) -> Result<(), GadgetViolation> {
    let d = g.degree;
    for mask in 0u32..(1u32 << d) {
        let outward: Vec<bool> = (0..d).map(|i| mask >> i & 1 == 1).collect();
        let expected = g.set.contains(mask.count_ones());
        if gadget_accepts(g, &outward) != expected {
            return Err(GadgetViolation { outward: (0..d).filter(|&i| outward[i]).collect(), expected });
        }
    }
    Ok(())
}
