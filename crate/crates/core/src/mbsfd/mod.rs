//! Matching plus `k`-bounded star forest decomposition in polynomial time.
//!
//! Every edge at a vertex of degree at least three lies in the matching or in
//! the star centred at that vertex. The graph splits into chains of
//! degree-two vertices between such vertices (or leaves), each chain is
//! summarized by how many of its high end edges can be matching edges, and
//! the choice at every high vertex becomes a small-gap factor problem on the
//! bipartite graph of high vertices against chains.

mod chains;
mod profile;

use serde::Serialize;

pub use chains::{chain_decompose, Chain, ChainFamily, ChainShape, EndKind, Slot};
pub use profile::{chain_profile, ChainProfile, PatternWitness};

use crate::error::MbsfdError;
use crate::graph::{Decomposition, DecompositionSpec, Graph, KBound, Label, MultiGraph};
use crate::par::{self, Execution};
use crate::sggf::{solve_sggf, GapSet, SggfInstance};

/// Where an H-edge comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SlotRef {
    pub chain: usize,
    pub slot: Slot,
}

/// The factor instance: nodes `0..high.len()` stand for the high vertices,
/// node `high.len() + i` for chain `i`.
#[derive(Debug, Clone, Serialize)]
pub struct MbsfdInstance {
    pub family: ChainFamily,
    pub profiles: Vec<ChainProfile>,
    #[serde(skip)]
    pub sggf: Option<SggfInstance>,
    /// For every H-edge, the chain end it represents.
    pub slots: Vec<SlotRef>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum Route {
    /// Some vertex has degree at least `k + 2`.
    DegreeObstruction {
        vertex: usize,
        degree: usize,
    },
    /// `k = 1`: the graph must split into two matchings.
    TwoMatchings,
    Pipeline,
}

fn high_set(degree: usize, k: KBound) -> GapSet {
    let full = k.finite().is_some_and(|b| degree == b as usize + 1);
    GapSet::new(if full { vec![1] } else { vec![0, 1] }).expect("small gap")
}

/// Builds the factor instance for `g`. `sggf` is `None` when some chain admits
/// no labelling at all.
pub fn build_sggf_instance(g: &Graph, k: KBound, exec: Execution) -> Result<MbsfdInstance, MbsfdError> {
    if let Some(v) = (0..g.n()).find(|&v| !k.admits(g.degree(v).saturating_sub(1))) {
        return Err(MbsfdError::DegreeTooLarge { vertex: v, degree: g.degree(v) });
    }
    let family = chain_decompose(g);
    let profiles = par::map(exec, &family.chains, |c| chain_profile(&c.shape, k));
    let mut index = vec![usize::MAX; g.n()];
    for (i, &x) in family.high.iter().enumerate() {
        index[x] = i;
    }
    let xs = family.high.len();
    let mut h = MultiGraph::new(xs + family.chains.len());
    let mut slots = Vec::new();
    for (i, c) in family.chains.iter().enumerate() {
        for slot in c.shape.slots() {
            h.add_edge(index[c.slot_vertex(slot)], xs + i).expect("distinct sides");
            slots.push(SlotRef { chain: i, slot });
        }
    }
    let sggf = if profiles.iter().any(|p| p.achievable.is_empty()) {
        None
    } else {
        let sets = family
            .high
            .iter()
            .map(|&x| high_set(g.degree(x), k))
            .chain(profiles.iter().map(|p| GapSet::new(p.achievable.iter().copied()).expect("profiles are small gap")))
            .collect();
        Some(SggfInstance::new(h, sets).expect("one nonempty set per node"))
    };
    Ok(MbsfdInstance { family, profiles, sggf, slots })
}

/// Turns a factor `s` (H-edge ids) into a decomposition of `g`.
pub fn lift_solution(g: &Graph, k: KBound, inst: &MbsfdInstance, s: &[usize]) -> Result<Decomposition, MbsfdError> {
    let mut chosen = vec![false; inst.slots.len()];
    for &e in s {
        *chosen.get_mut(e).ok_or(MbsfdError::EdgeOutOfRange { edge: e, edges: inst.slots.len() })? = true;
    }
    let mut labels = vec![Label::Forest; g.m()];
    let mut next = 0;
    for (i, (c, p)) in inst.family.chains.iter().zip(&inst.profiles).enumerate() {
        let n = c.shape.slots().len();
        let selected = &chosen[next..next + n];
        next += n;
        let w = p.witness(selected).ok_or(MbsfdError::MissingWitness { chain: i })?;
        for (&e, &l) in c.edges.iter().zip(w) {
            labels[e] = l;
        }
    }
    Ok(Decomposition::new(g.clone(), labels, DecompositionSpec::star(k)).expect("one label per edge"))
}

fn two_matchings(g: &Graph) -> Option<Decomposition> {
    let mut labels = vec![Label::Matching; g.m()];
    for c in chain_decompose(g).chains {
        if matches!(c.shape, ChainShape::Cycle { .. }) && c.edges.len() % 2 == 1 {
            return None;
        }
        for (i, &e) in c.edges.iter().enumerate() {
            labels[e] = if i % 2 == 0 { Label::Matching } else { Label::Forest };
        }
    }
    Some(Decomposition::new(g.clone(), labels, DecompositionSpec::star(KBound::Finite(1))).expect("sizes match"))
}

/// Decides whether `g` splits into a matching and a star forest whose stars
/// have at most `k` edges, and returns such a split together with the route
/// taken.
pub fn solve_mbsfd_traced(g: &Graph, k: KBound, exec: Execution) -> (Option<Decomposition>, Route) {
    assert!(k != KBound::Finite(0), "k must be at least one");
    if let Some(v) = (0..g.n()).find(|&v| !k.admits(g.degree(v).saturating_sub(1))) {
        return (None, Route::DegreeObstruction { vertex: v, degree: g.degree(v) });
    }
    if k == KBound::Finite(1) {
        return (two_matchings(g), Route::TwoMatchings);
    }
    let inst = build_sggf_instance(g, k, exec).expect("degrees checked above");
    let Some(sggf) = &inst.sggf else {
        return (None, Route::Pipeline);
    };
    let s = solve_sggf(sggf).expect("single-piece gadgets");
    let d = s.map(|s| lift_solution(g, k, &inst, &s).expect("profiles agree with the factor constraints"));
    (d, Route::Pipeline)
}

pub fn solve_mbsfd(g: &Graph, k: KBound) -> Option<Decomposition> {
    solve_mbsfd_traced(g, k, Execution::default()).0
}
