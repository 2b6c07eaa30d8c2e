//! Boundary profiles of single chains.
//!
//! Inside a chain, matching edges are pairwise non-adjacent and forest edges
//! form runs of at most two edges (stars with one or two edges). A forest
//! edge at a high-degree end belongs to the star centred there, so its run
//! has exactly one edge and must not reach another high-degree end.

use std::collections::BTreeMap;

use serde::Serialize;

use super::chains::{ChainShape, EndKind};
use crate::graph::{KBound, Label};

/// One feasible boundary pattern and an interior labelling realizing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternWitness {
    /// Per slot of the shape: whether its end edge is in the matching.
    pub selected: Vec<bool>,
    pub labels: Vec<Label>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainProfile {
    pub shape: ChainShape,
    /// Numbers of high-degree end edges that can be in the matching.
    pub achievable: Vec<u32>,
    pub witnesses: Vec<PatternWitness>,
}

impl ChainProfile {
    pub fn witness(&self, selected: &[bool]) -> Option<&[Label]> {
        self.witnesses.iter().find(|w| w.selected == selected).map(|w| w.labels.as_slice())
    }

    pub fn feasible(&self, selected: &[bool]) -> bool {
        self.witness(selected).is_some()
    }
}

struct Rules {
    len: usize,
    start_high: bool,
    end_high: bool,
    first: Option<Label>,
    last: Option<Label>,
    cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct State {
    prev: Label,
    run: usize,
    from_start: bool,
}

fn step(r: &Rules, i: usize, s: Option<State>, c: Label) -> Option<State> {
    let forced = if i == 0 { r.first } else { None }.or(if i + 1 == r.len { r.last } else { None });
    if i == 0 && i + 1 == r.len && r.first.is_some() && r.last.is_some() && r.first != r.last {
        return None;
    }
    if forced.is_some_and(|f| f != c) {
        return None;
    }
    match (s, c) {
        (Some(State { prev: Label::Matching, .. }), Label::Matching) => None,
        (_, Label::Matching) => Some(State { prev: Label::Matching, run: 0, from_start: false }),
        (s, Label::Forest) => {
            let (run, from_start) = match s {
                None => (1, true),
                Some(State { prev: Label::Forest, run, from_start }) => (run + 1, from_start),
                Some(_) => (1, false),
            };
            let limit = if from_start && r.start_high { 1 } else { r.cap };
            (run <= limit).then_some(State { prev: Label::Forest, run, from_start })
        }
    }
}

fn accepts_end(r: &Rules, s: State) -> bool {
    s.prev == Label::Matching || !r.end_high || (s.run == 1 && !(s.from_start && r.start_high))
}

/// Dynamic program over the chain; returns one labelling, preferring forest
/// edges early.
fn solve(r: &Rules) -> Option<Vec<Label>> {
    if r.len == 0 {
        return Some(vec![]);
    }
    let mut layers: Vec<BTreeMap<State, (Option<State>, Label)>> = Vec::with_capacity(r.len);
    for i in 0..r.len {
        let mut next = BTreeMap::new();
        let prev: Vec<Option<State>> =
            if i == 0 { vec![None] } else { layers[i - 1].keys().copied().map(Some).collect() };
        for s in prev {
            for c in [Label::Forest, Label::Matching] {
                if let Some(t) = step(r, i, s, c) {
                    next.entry(t).or_insert((s, c));
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        layers.push(next);
    }
    let end = *layers[r.len - 1].keys().find(|&&s| accepts_end(r, s))?;
    let mut labels = vec![Label::Forest; r.len];
    let mut at = Some(end);
    for i in (0..r.len).rev() {
        let (p, c) = layers[i][&at.expect("back pointers reach the start")];
        labels[i] = c;
        at = p;
    }
    Some(labels)
}

fn label_of(selected: bool) -> Label {
    if selected {
        Label::Matching
    } else {
        Label::Forest
    }
}

/// Feasible boundary patterns of a chain with a witness for each.
///
/// The chain rules do not depend on `k` once `k >= 2`; for `k = 1` forest runs
/// are capped at one edge.
pub fn chain_profile(shape: &ChainShape, k: KBound) -> ChainProfile {
    let cap = k.as_usize().min(2);
    let slots = shape.slots();
    let mut witnesses = Vec::new();
    for mask in 0..1u32 << slots.len() {
        let selected: Vec<bool> = (0..slots.len()).map(|i| mask >> i & 1 == 1).collect();
        let rules = match *shape {
            ChainShape::Path { length, start, end } => {
                let start_high = start == EndKind::High;
                let end_high = end == EndKind::High;
                let mut it = selected.iter();
                let first = start_high.then(|| label_of(*it.next().expect("slot")));
                let last = end_high.then(|| label_of(*it.next().expect("slot")));
                Rules { len: length, start_high, end_high, first, last, cap }
            }
            ChainShape::Cycle { length, through_high: true } => {
                if selected[0] && selected[1] {
                    continue;
                }
                Rules {
                    len: length,
                    start_high: true,
                    end_high: true,
                    first: Some(label_of(selected[0])),
                    last: Some(label_of(selected[1])),
                    cap,
                }
            }
            // Rotate so that a matching edge comes first; the closing run
            // then ends at it.
            ChainShape::Cycle { length, through_high: false } => Rules {
                len: length,
                start_high: false,
                end_high: false,
                first: Some(Label::Matching),
                last: Some(Label::Forest),
                cap,
            },
        };
        if let Some(labels) = solve(&rules) {
            witnesses.push(PatternWitness { selected, labels });
        }
    }
    let mut achievable: Vec<u32> = witnesses.iter().map(|w| w.selected.iter().filter(|&&b| b).count() as u32).collect();
    achievable.sort_unstable();
    achievable.dedup();
    ChainProfile { shape: *shape, achievable, witnesses }
}
