//! Explicit decompositions of the gadgets for prescribed pin labels.
//!
//! These are assembled from the pieces instead of searched for, so they also
//! work for gadgets above the exact solver's size cap. Forcer interiors use the
//! first decomposition the exact solver finds for the forcer alone.

use super::{build_gadget, GadgetKind, PinnedGadget};
use crate::exact::{solve_exact, ExactConfig};
use crate::graph::{DecompositionSpec, Label};

use Label::{Forest as F, Matching as M};

fn first_solution(g: &PinnedGadget) -> Vec<Label> {
    let spec = DecompositionSpec::linear(g.k);
    let cfg = ExactConfig { max_edges: usize::MAX, ..ExactConfig::sequential() };
    solve_exact(&g.graph, spec, &cfg).expect("no cap").expect("forcers are decomposable").labels
}

fn forcer_fill(g: &PinnedGadget) -> Vec<Label> {
    match g.kind {
        GadgetKind::MForcer => first_solution(g),
        GadgetKind::FForcer if g.ell == Some(1) => first_solution(g),
        GadgetKind::FForcer => {
            let mut labels = vec![F; g.graph.m()];
            let inner = build_gadget(GadgetKind::MForcer, g.k, None).expect("valid k");
            let inner_labels = first_solution(&inner);
            for part in &g.parts {
                for (i, &e) in part.edges.iter().enumerate() {
                    labels[e] = inner_labels[i];
                }
            }
            labels
        }
        _ => unreachable!("not a forcer"),
    }
}

fn paste(labels: &mut [Label], edges: &[usize], sub: &[Label]) {
    for (i, &e) in edges.iter().enumerate() {
        labels[e] = sub[i];
    }
}

/// OR gadget labels for the given input labels, one of the four possible
/// decompositions.
pub fn or_fill(g: &PinnedGadget, e1: Label, e2: Label) -> Vec<Label> {
    assert_eq!(g.kind, GadgetKind::Or);
    let mut labels = vec![F; g.graph.m()];
    let forcer = build_gadget(GadgetKind::FForcer, g.k, Some(g.k - 2)).expect("valid k");
    paste(&mut labels, &g.parts[0].edges, &forcer_fill(&forcer));
    let gr = &g.graph;
    let f = g.edge("f");
    let x = gr.other(f, g.vertex("o"));
    let v1 = gr.other(g.edge("e1"), g.vertex("p1"));
    let v2 = gr.other(g.edge("e2"), g.vertex("p2"));
    let v1x = gr.edge_id(v1, x).expect("v1x");
    let v2x = gr.edge_id(v2, x).expect("v2x");
    let (lf, l1, l2) = match (e1, e2) {
        (M, M) => (M, F, F),
        (F, M) => (F, M, F),
        (M, F) => (F, F, M),
        (F, F) => (F, F, M),
    };
    for (e, l) in [(g.edge("e1"), e1), (g.edge("e2"), e2), (f, lf), (v1x, l1), (v2x, l2)] {
        labels[e] = l;
    }
    labels
}

/// Rejector labels with `e'` and `e` labelled as given, in which neither lies
/// on a forest path longer than one edge. `None` when both are forest edges.
pub fn rejector_fill(g: &PinnedGadget, e_prime: Label, e: Label) -> Option<Vec<Label>> {
    assert_eq!(g.kind, GadgetKind::Rejector);
    if e_prime == F && e == F {
        return None;
    }
    let mut labels = vec![F; g.graph.m()];
    let forcer = build_gadget(GadgetKind::FForcer, g.k, Some(g.k - 2)).expect("valid k");
    let inner = forcer_fill(&forcer);
    let gr = &g.graph;
    let h = g.parts.len();
    let mut u = gr.other(g.edge("e'"), g.vertex("n'"));
    for (j, part) in g.parts.iter().enumerate() {
        paste(&mut labels, &part.edges, &inner);
        let vj = part.vertices[forcer.vertex("v")];
        let &(wj, vw) = gr.neighbors(vj).iter().find(|&&(_, id)| !part.edges.contains(&id)).expect("v_j w_j");
        let uw = gr.edge_id(u, wj).expect("u_j w_j");
        let next = gr.neighbors(wj).iter().map(|&(x, _)| x).find(|&x| x != vj && x != u).expect("u_{j+1}");
        let wn = gr.edge_id(wj, next).expect("w_j u_{j+1}");
        let (lv, lu, ln) = match (e_prime, e) {
            (F, M) => (F, M, F),
            (M, F) => (F, F, M),
            _ => (M, F, F),
        };
        labels[vw] = lv;
        labels[uw] = lu;
        labels[wn] = ln;
        u = next;
        if j + 1 == h {
            debug_assert_eq!(gr.other(g.edge("e"), g.vertex("n")), u);
        }
    }
    labels[g.edge("e'")] = e_prime;
    labels[g.edge("e")] = e;
    Some(labels)
}

/// Variable gadget labels for the given input labels. `None` when the
/// combination is excluded (a forest positive input together with a forest
/// negative input).
pub fn variable_fill(g: &PinnedGadget, e1: Label, e2: Label, e: Label) -> Option<Vec<Label>> {
    assert_eq!(g.kind, GadgetKind::Variable);
    let or = build_gadget(GadgetKind::Or, g.k, None).expect("valid k");
    let rej = build_gadget(GadgetKind::Rejector, g.k, None).expect("valid k");
    let or_labels = or_fill(&or, e1, e2);
    let f = or_labels[or.edge("f")];
    let rej_labels = rejector_fill(&rej, f, e)?;
    let mut labels = vec![F; g.graph.m()];
    paste(&mut labels, &g.parts[0].edges, &or_labels);
    paste(&mut labels, &g.parts[1].edges, &rej_labels);
    Some(labels)
}

/// A decomposition of any gadget with its constrained pin edges labelled as
/// `core` (in [`PinnedGadget::core_edges`] order), or `None` if the
/// definition excludes that labelling.
pub fn canonical_fill(g: &PinnedGadget, core: &[Label]) -> Option<Vec<Label>> {
    match g.kind {
        GadgetKind::MForcer | GadgetKind::FForcer => {
            let labels = forcer_fill(g);
            (labels[g.edge("e")] == core[0]).then_some(labels)
        }
        GadgetKind::Or => {
            let labels = or_fill(g, core[0], core[1]);
            (labels[g.edge("f")] == core[2]).then_some(labels)
        }
        GadgetKind::Rejector => rejector_fill(g, core[0], core[1]),
        GadgetKind::Variable => variable_fill(g, core[0], core[1], core[2]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_labels;

    fn check(g: &PinnedGadget, labels: &[Label]) {
        let v = validate_labels(&g.graph, labels, DecompositionSpec::linear(g.k));
        assert!(v.is_empty(), "{} k={}: {v:?}", g.kind, g.k);
    }

    #[test]
    fn fills_validate_for_many_k() {
        for k in 3..=10 {
            let or = build_gadget(GadgetKind::Or, k, None).unwrap();
            for e1 in [F, M] {
                for e2 in [F, M] {
                    let l = or_fill(&or, e1, e2);
                    check(&or, &l);
                    assert_eq!(l[or.edge("f")] == M, e1 == M && e2 == M);
                }
            }
            let rej = build_gadget(GadgetKind::Rejector, k, None).unwrap();
            for (a, b) in [(F, M), (M, F), (M, M)] {
                let l = rejector_fill(&rej, a, b).unwrap();
                check(&rej, &l);
                assert_eq!((l[rej.edge("e'")], l[rej.edge("e")]), (a, b));
            }
            assert!(rejector_fill(&rej, F, F).is_none());
            let var = build_gadget(GadgetKind::Variable, k, None).unwrap();
            for e1 in [F, M] {
                for e2 in [F, M] {
                    for e in [F, M] {
                        let got = variable_fill(&var, e1, e2, e);
                        let allowed = !(e == F && (e1 == F || e2 == F));
                        assert_eq!(got.is_some(), allowed);
                        if let Some(l) = got {
                            check(&var, &l);
                            assert_eq!([l[var.edge("e1")], l[var.edge("e2")], l[var.edge("e")]], [e1, e2, e]);
                        }
                    }
                }
            }
            for ell in 1..=k {
                let f = build_gadget(GadgetKind::FForcer, k, Some(ell)).unwrap();
                check(&f, &canonical_fill(&f, &[F]).unwrap());
            }
        }
    }
}
