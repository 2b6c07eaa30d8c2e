//! Backtracking solver for small instances under either decomposition spec.
//!
//! Edges are labelled one at a time. Each side keeps incremental state (a
//! union-find with undo for linear sides, degree and neighbour data for the star
//! side) so a label is accepted only if the partial assignment can still be a
//! decomposition. After every step, unlabelled edges at the touched endpoints are
//! checked to still have at least one legal side.
//!
//! The search is deterministic: edges are explored in a fixed order and the
//! forest label is tried before the matching label. Parallel runs split on the
//! labels of the first few edges and merge results in prefix order, so they
//! agree with sequential runs exactly.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::error::ExactError;
use crate::graph::{Decomposition, DecompositionSpec, Graph, KBound, Label};
use crate::par::{self, Execution};

pub const DEFAULT_MAX_EDGES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactConfig {
    pub max_edges: usize,
    pub execution: Execution,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig { max_edges: DEFAULT_MAX_EDGES, execution: Execution::default() }
    }
}

impl ExactConfig {
    pub fn sequential() -> Self {
        ExactConfig { execution: Execution::Sequential, ..Self::default() }
    }

    fn check(&self, g: &Graph) -> Result<(), ExactError> {
        if g.m() > self.max_edges {
            return Err(ExactError::SizeCap { edges: g.m(), cap: self.max_edges });
        }
        Ok(())
    }
}

/// Linear forest side: degrees plus an undoable union-find whose roots carry
/// the edge count of their component.
struct LinearSide {
    bound: usize,
    deg: Vec<u8>,
    parent: Vec<usize>,
    size: Vec<usize>,
    edges: Vec<usize>,
    history: Vec<(usize, usize)>,
}

impl LinearSide {
    fn new(n: usize, bound: KBound) -> Self {
        LinearSide {
            bound: bound.as_usize(),
            deg: vec![0; n],
            parent: (0..n).collect(),
            size: vec![1; n],
            edges: vec![0; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn can_add(&self, u: usize, v: usize) -> bool {
        if self.deg[u] >= 2 || self.deg[v] >= 2 {
            return false;
        }
        let (ru, rv) = (self.find(u), self.find(v));
        ru != rv && self.edges[ru] + self.edges[rv] < self.bound
    }

    fn add(&mut self, u: usize, v: usize) {
        self.deg[u] += 1;
        self.deg[v] += 1;
        let (mut a, mut b) = (self.find(u), self.find(v));
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.edges[a] += self.edges[b] + 1;
        self.history.push((b, a));
    }

    fn undo(&mut self, u: usize, v: usize) {
        let (b, a) = self.history.pop().expect("undo without add");
        self.parent[b] = b;
        self.size[a] -= self.size[b];
        self.edges[a] -= self.edges[b] + 1;
        self.deg[u] -= 1;
        self.deg[v] -= 1;
    }
}

/// Star forest side. `nsum[v]` is the sum of neighbour ids, which names the
/// partner of a degree-one vertex.
struct StarSide {
    bound: usize,
    deg: Vec<usize>,
    nsum: Vec<usize>,
}

impl StarSide {
    fn new(n: usize, bound: KBound) -> Self {
        StarSide { bound: bound.as_usize(), deg: vec![0; n], nsum: vec![0; n] }
    }

    /// Whether `u` can serve as the centre of a star that gains a new leaf.
    fn hub(&self, u: usize) -> bool {
        self.deg[u] != 1 || self.deg[self.nsum[u]] == 1
    }

    fn extends(&self, centre: usize, leaf: usize) -> bool {
        self.deg[leaf] == 0 && self.hub(centre) && self.deg[centre] < self.bound
    }

    fn can_add(&self, u: usize, v: usize) -> bool {
        self.extends(u, v) || self.extends(v, u)
    }

    fn add(&mut self, u: usize, v: usize) {
        self.deg[u] += 1;
        self.deg[v] += 1;
        self.nsum[u] += v;
        self.nsum[v] += u;
    }

    fn undo(&mut self, u: usize, v: usize) {
        self.deg[u] -= 1;
        self.deg[v] -= 1;
        self.nsum[u] -= v;
        self.nsum[v] -= u;
    }
}

enum Side {
    Linear(LinearSide),
    Star(StarSide),
}

impl Side {
    fn can_add(&self, u: usize, v: usize) -> bool {
        match self {
            Side::Linear(s) => s.can_add(u, v),
            Side::Star(s) => s.can_add(u, v),
        }
    }

    fn add(&mut self, u: usize, v: usize) {
        match self {
            Side::Linear(s) => s.add(u, v),
            Side::Star(s) => s.add(u, v),
        }
    }

    fn undo(&mut self, u: usize, v: usize) {
        match self {
            Side::Linear(s) => s.undo(u, v),
            Side::Star(s) => s.undo(u, v),
        }
    }
}

/// Edge order: repeatedly take the edge with the most endpoints already
/// touched, lowest index first among ties.
fn edge_order(g: &Graph) -> Vec<usize> {
    let m = g.m();
    let mut touched = vec![false; g.n()];
    let mut used = vec![false; m];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let mut best = None;
        let mut best_score = -1i32;
        for (e, _) in used.iter().enumerate().filter(|(_, &u)| !u) {
            let (u, v) = g.edge(e);
            let score = touched[u] as i32 + touched[v] as i32;
            if score > best_score {
                best_score = score;
                best = Some(e);
                if score == 2 {
                    break;
                }
            }
        }
        let e = best.unwrap();
        used[e] = true;
        let (u, v) = g.edge(e);
        touched[u] = true;
        touched[v] = true;
        order.push(e);
    }
    order
}

struct Search<'g> {
    g: &'g Graph,
    order: &'g [usize],
    forest: Side,
    matching: Side,
    labels: Vec<Label>,
    assigned: Vec<bool>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, spec: DecompositionSpec, order: &'g [usize]) -> Self {
        let n = g.n();
        let (forest, matching) = match spec {
            DecompositionSpec::Linear { k, l } => {
                (Side::Linear(LinearSide::new(n, k)), Side::Linear(LinearSide::new(n, l)))
            }
            DecompositionSpec::Star { k } => {
                (Side::Star(StarSide::new(n, k)), Side::Linear(LinearSide::new(n, KBound::Finite(1))))
            }
        };
        Search { g, order, forest, matching, labels: vec![Label::Forest; g.m()], assigned: vec![false; g.m()] }
    }

    fn side(&mut self, l: Label) -> &mut Side {
        match l {
            Label::Forest => &mut self.forest,
            Label::Matching => &mut self.matching,
        }
    }

    fn try_assign(&mut self, e: usize, l: Label) -> bool {
        let (u, v) = self.g.edge(e);
        if !self.side(l).can_add(u, v) {
            return false;
        }
        self.side(l).add(u, v);
        self.labels[e] = l;
        self.assigned[e] = true;
        if self.consistent(u) && self.consistent(v) {
            return true;
        }
        self.unassign(e);
        false
    }

    fn unassign(&mut self, e: usize) {
        let (u, v) = self.g.edge(e);
        let l = self.labels[e];
        self.assigned[e] = false;
        self.side(l).undo(u, v);
    }

    /// Every unlabelled edge at `w` still fits on some side.
    fn consistent(&self, w: usize) -> bool {
        self.g
            .neighbors(w)
            .iter()
            .all(|&(x, f)| self.assigned[f] || self.forest.can_add(w, x) || self.matching.can_add(w, x))
    }

    fn run<V>(&mut self, depth: usize, stop: usize, visit: &mut V) -> ControlFlow<()>
    where
        V: FnMut(&Self) -> ControlFlow<()>,
    {
        if depth == stop {
            return visit(self);
        }
        let e = self.order[depth];
        for l in [Label::Forest, Label::Matching] {
            if self.try_assign(e, l) {
                let flow = self.run(depth + 1, stop, visit);
                self.unassign(e);
                flow?;
            }
        }
        ControlFlow::Continue(())
    }

    /// Replays a prefix of labels for the first `prefix.len()` ordered edges.
    fn replay(&mut self, prefix: &[Label]) {
        for (i, &l) in prefix.iter().enumerate() {
            let ok = self.try_assign(self.order[i], l);
            debug_assert!(ok, "prefix came from the same search");
        }
    }
}

/// Prefix length used to split work across threads.
fn split_depth(m: usize, exec: Execution) -> usize {
    if !exec.is_parallel() || m < 16 {
        0
    } else {
        10.min(m)
    }
}

fn prefixes(g: &Graph, spec: DecompositionSpec, order: &[usize], depth: usize) -> Vec<Vec<Label>> {
    let mut out = Vec::new();
    let mut s = Search::new(g, spec, order);
    let _ = s.run(0, depth, &mut |s: &Search| {
        out.push(s.order[..depth].iter().map(|&e| s.labels[e]).collect());
        ControlFlow::Continue(())
    });
    out
}

/// Calls `visit` on every decomposition, sequentially and in search order.
/// Returning `Break` stops the enumeration.
pub fn for_each_decomposition<V>(
    g: &Graph,
    spec: DecompositionSpec,
    cfg: &ExactConfig,
    mut visit: V,
) -> Result<(), ExactError>
where
    V: FnMut(&[Label]) -> ControlFlow<()>,
{
    cfg.check(g)?;
    let order = edge_order(g);
    let mut s = Search::new(g, spec, &order);
    let _ = s.run(0, g.m(), &mut |s: &Search| visit(&s.labels));
    Ok(())
}

/// Folds over every decomposition. With a parallel config the work is split
/// by prefix and the partial accumulators are combined with `reduce` in
/// search order, so the result matches a sequential fold.
pub fn fold_decompositions<A, I, F, R>(
    g: &Graph,
    spec: DecompositionSpec,
    cfg: &ExactConfig,
    init: I,
    fold: F,
    reduce: R,
) -> Result<A, ExactError>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &[Label]) + Sync + Send,
    R: Fn(A, A) -> A,
{
    cfg.check(g)?;
    let order = edge_order(g);
    let depth = split_depth(g.m(), cfg.execution);
    let run = |prefix: &Vec<Label>| {
        let mut acc = init();
        let mut s = Search::new(g, spec, &order);
        s.replay(prefix);
        let _ = s.run(prefix.len(), g.m(), &mut |s: &Search| {
            fold(&mut acc, &s.labels);
            ControlFlow::Continue(())
        });
        acc
    };
    if depth == 0 {
        return Ok(run(&Vec::new()));
    }
    let parts = par::map(cfg.execution, &prefixes(g, spec, &order, depth), run);
    Ok(parts.into_iter().fold(init(), reduce))
}

/// Number of decompositions of `g`.
pub fn count_decompositions(g: &Graph, spec: DecompositionSpec, cfg: &ExactConfig) -> Result<u64, ExactError> {
    fold_decompositions(g, spec, cfg, || 0u64, |c, _| *c += 1, |a, b| a + b)
}

/// The total count together with the set of distinct label vectors on `projection`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Enumeration {
    pub count: u64,
    pub projections: BTreeSet<Vec<Label>>,
}

pub fn enumerate_decompositions(
    g: &Graph,
    spec: DecompositionSpec,
    projection: &[usize],
    cfg: &ExactConfig,
) -> Result<Enumeration, ExactError> {
    fold_decompositions(
        g,
        spec,
        cfg,
        Enumeration::default,
        |acc, labels| {
            acc.count += 1;
            acc.projections.insert(projection.iter().map(|&e| labels[e]).collect());
        },
        |mut a, b| {
            a.count += b.count;
            a.projections.extend(b.projections);
            a
        },
    )
}

fn first_labels(g: &Graph, spec: DecompositionSpec, exec: Execution) -> Option<Vec<Label>> {
    let order = edge_order(g);
    let depth = split_depth(g.m(), exec);
    let run = |prefix: &Vec<Label>| {
        let mut found = None;
        let mut s = Search::new(g, spec, &order);
        s.replay(prefix);
        let _ = s.run(prefix.len(), g.m(), &mut |s: &Search| {
            found = Some(s.labels.clone());
            ControlFlow::Break(())
        });
        found
    };
    if depth == 0 {
        return run(&Vec::new());
    }
    par::find_map_first(exec, &prefixes(g, spec, &order, depth), run)
}

/// Finds a decomposition, or `None` if the graph has none.
///
/// Components are solved independently; the first decomposition found for
/// each is kept, so the output is deterministic.
pub fn solve_exact(g: &Graph, spec: DecompositionSpec, cfg: &ExactConfig) -> Result<Option<Decomposition>, ExactError> {
    cfg.check(g)?;
    let mut labels = vec![Label::Forest; g.m()];
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let (sub, map) = g.induced(&comp);
        match first_labels(&sub, spec, cfg.execution) {
            Some(found) => {
                for (i, l) in found.into_iter().enumerate() {
                    labels[map[i]] = l;
                }
            }
            None => return Ok(None),
        }
    }
    Ok(Some(Decomposition::new(g.clone(), labels, spec).expect("one label per edge")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_labels;

    /// All 2^m labellings filtered by the validator: an oracle independent of
    /// the incremental side states.
    fn brute(g: &Graph, spec: DecompositionSpec) -> Vec<Vec<Label>> {
        let m = g.m();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << m) {
            let labels: Vec<Label> =
                (0..m).map(|i| if mask >> i & 1 == 1 { Label::Matching } else { Label::Forest }).collect();
            if validate_labels(g, &labels, spec).is_empty() {
                out.push(labels);
            }
        }
        out
    }

    fn collect(g: &Graph, spec: DecompositionSpec) -> Vec<Vec<Label>> {
        let mut out = Vec::new();
        for_each_decomposition(g, spec, &ExactConfig::sequential(), |l| {
            out.push(l.to_vec());
            ControlFlow::Continue(())
        })
        .unwrap();
        out.sort();
        out
    }

    fn specs() -> Vec<DecompositionSpec> {
        let mut v = Vec::new();
        for k in [KBound::Finite(1), KBound::Finite(2), KBound::Finite(3), KBound::Infinite] {
            v.push(DecompositionSpec::Star { k });
            for l in [KBound::Finite(1), KBound::Finite(2), KBound::Infinite] {
                v.push(DecompositionSpec::Linear { k, l });
            }
        }
        v
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let graphs = [
            Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap(),
            Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 3)]).unwrap(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap(),
            Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)]).unwrap(),
        ];
        for g in &graphs {
            for spec in specs() {
                let mut want = brute(g, spec);
                want.sort();
                assert_eq!(collect(g, spec), want, "{spec} on {:?}", g.edges());
            }
        }
    }

    #[test]
    fn size_cap() {
        let edges: Vec<_> = (0..70).map(|i| (i, i + 1)).collect();
        let g = Graph::from_edges(71, &edges).unwrap();
        let err = solve_exact(&g, DecompositionSpec::linear(3), &ExactConfig::default()).unwrap_err();
        assert_eq!(err, ExactError::SizeCap { edges: 70, cap: 64 });
        let cfg = ExactConfig { max_edges: 100, ..ExactConfig::default() };
        assert!(solve_exact(&g, DecompositionSpec::linear(3), &cfg).unwrap().unwrap().is_valid());
    }

    #[test]
    fn k4_has_no_decomposition() {
        // Six edges, but on four vertices a matching holds two and a forest three.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let cfg = ExactConfig::default();
        let one = |s: &DecompositionSpec| !matches!(s, DecompositionSpec::Linear { l, .. } if *l != KBound::Finite(1));
        for spec in specs().into_iter().filter(one) {
            assert!(solve_exact(&g, spec, &cfg).unwrap().is_none(), "{spec}");
        }
    }

    #[test]
    fn parallel_fold_matches_sequential() {
        let mut edges = Vec::new();
        for i in 0..12 {
            edges.push((i, (i + 1) % 12));
        }
        for i in 0..6 {
            edges.push((i, i + 6));
        }
        let g = Graph::from_edges(12, &edges).unwrap();
        let proj: Vec<usize> = (0..4).collect();
        let mut total = 0;
        for spec in specs() {
            let seq = enumerate_decompositions(&g, spec, &proj, &ExactConfig::sequential()).unwrap();
            let par = enumerate_decompositions(&g, spec, &proj, &ExactConfig::default()).unwrap();
            assert_eq!(seq, par, "{spec}");
            total += seq.count;
            let a = solve_exact(&g, spec, &ExactConfig::sequential()).unwrap();
            let b = solve_exact(&g, spec, &ExactConfig::default()).unwrap();
            assert_eq!(a, b, "{spec}");
            assert_eq!(a.is_some(), seq.count > 0, "{spec}");
        }
        assert!(total > 0);
    }
}
