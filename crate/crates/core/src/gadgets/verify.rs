use std::collections::BTreeMap;

use serde::Serialize;

use super::{build_gadget, GadgetKind, PinnedGadget};
use crate::error::ExactError;
use crate::exact::{fold_decompositions, ExactConfig};
use crate::graph::{DecompositionSpec, Graph, KBound, Label};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// A full labelling (one label per edge) that breaks the clause.
    Decomposition {
        labels: Vec<Label>,
    },
    /// A required pin labelling that no decomposition realises.
    Partition {
        pins: BTreeMap<String, Label>,
    },
    NoDecomposition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub clause: &'static str,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail(Failure),
    /// The graph is too large to enumerate; `verifiable_k` lists the k in
    /// 3..=12 whose gadget of this kind fits under the cap.
    SizeCap {
        edges: usize,
        cap: usize,
        verifiable_k: Vec<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetReport {
    pub kind: GadgetKind,
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    pub vertices: usize,
    pub edges: usize,
    pub status: Status,
    /// Number of decompositions of the whole gadget graph.
    pub decompositions: Option<u64>,
    /// Distinct labellings of the constrained pin edges.
    pub core_labelings: Vec<BTreeMap<String, Label>>,
}

impl GadgetReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failure(&self) -> Option<&Failure> {
        match &self.status {
            Status::Fail(f) => Some(f),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
struct ProjStat {
    first: Vec<Label>,
    /// A decomposition with this projection in which no forest pin edge lies
    /// on a forest path longer than one edge.
    clean: Option<Vec<Label>>,
}

#[derive(Debug, Clone, Default)]
struct Acc {
    count: u64,
    by_proj: BTreeMap<Vec<Label>, ProjStat>,
    path_lengths: BTreeMap<usize, Vec<Label>>,
}

impl Acc {
    fn merge(mut self, later: Acc) -> Acc {
        self.count += later.count;
        for (key, stat) in later.by_proj {
            match self.by_proj.get_mut(&key) {
                None => {
                    self.by_proj.insert(key, stat);
                }
                Some(s) if s.clean.is_none() => s.clean = stat.clean,
                Some(_) => {}
            }
        }
        for (len, w) in later.path_lengths {
            self.path_lengths.entry(len).or_insert(w);
        }
        self
    }
}

fn forest_degree(g: &Graph, labels: &[Label], v: usize) -> usize {
    g.neighbors(v).iter().filter(|&&(_, e)| labels[e] == Label::Forest).count()
}

/// Length of the forest path that starts at the degree-one vertex `v`.
fn path_length_from(g: &Graph, labels: &[Label], v: usize) -> usize {
    let (mut prev_edge, mut cur) = match g.neighbors(v).iter().find(|&&(_, e)| labels[e] == Label::Forest) {
        Some(&(w, e)) => (e, w),
        None => return 0,
    };
    let mut len = 1;
    while let Some(&(w, e)) = g.neighbors(cur).iter().find(|&&(_, e)| e != prev_edge && labels[e] == Label::Forest) {
        prev_edge = e;
        cur = w;
        len += 1;
    }
    len
}

/// A forest edge lies on a forest path of length one iff neither endpoint
/// has another forest edge.
fn isolated_forest_edge(g: &Graph, labels: &[Label], e: usize) -> bool {
    let (u, v) = g.edge(e);
    forest_degree(g, labels, u) == 1 && forest_degree(g, labels, v) == 1
}

fn verifiable_k(kind: GadgetKind, ell: Option<u32>, cap: usize) -> Vec<u32> {
    (3..=12)
        .filter(|&k| {
            let ell = ell.map(|l| l.min(k));
            build_gadget(kind, k, ell).map(|g| g.graph.m() <= cap).unwrap_or(false)
        })
        .collect()
}

fn pins_map(names: &[&'static str], labels: &[Label]) -> BTreeMap<String, Label> {
    names.iter().zip(labels).map(|(n, &l)| (n.to_string(), l)).collect()
}

use Label::{Forest as F, Matching as M};

/// Exhaustively checks the defining property of `g` under LINEAR(k,1).
pub fn verify_gadget(g: &PinnedGadget, cfg: &ExactConfig) -> GadgetReport {
    let mut report = GadgetReport {
        kind: g.kind,
        k: g.k,
        ell: g.ell,
        vertices: g.graph.n(),
        edges: g.graph.m(),
        status: Status::Pass,
        decompositions: None,
        core_labelings: Vec::new(),
    };
    let spec = DecompositionSpec::Linear { k: KBound::Finite(g.k), l: KBound::Finite(1) };
    let core = g.core_edges();
    let names: Vec<&'static str> = core.iter().map(|c| c.0).collect();
    let core_ids: Vec<usize> = core.iter().map(|c| c.1).collect();
    let pin_v = g.vertex_pins.get("v").copied();
    let kind = g.kind;
    let graph = &g.graph;

    let fold = |acc: &mut Acc, labels: &[Label]| {
        acc.count += 1;
        let key: Vec<Label> = core_ids.iter().map(|&e| labels[e]).collect();
        let clean = kind == GadgetKind::Rejector
            && core_ids.iter().all(|&e| labels[e] == M || isolated_forest_edge(graph, labels, e));
        match acc.by_proj.get_mut(&key) {
            None => {
                let stat = ProjStat { first: labels.to_vec(), clean: clean.then(|| labels.to_vec()) };
                acc.by_proj.insert(key, stat);
            }
            Some(s) if clean && s.clean.is_none() => s.clean = Some(labels.to_vec()),
            Some(_) => {}
        }
        if kind == GadgetKind::FForcer {
            let len = path_length_from(graph, labels, pin_v.expect("forcers pin v"));
            acc.path_lengths.entry(len).or_insert_with(|| labels.to_vec());
        }
    };
    let acc = match fold_decompositions(graph, spec, cfg, Acc::default, fold, Acc::merge) {
        Ok(acc) => acc,
        Err(ExactError::SizeCap { edges, cap }) => {
            report.status = Status::SizeCap { edges, cap, verifiable_k: verifiable_k(g.kind, g.ell, cap) };
            return report;
        }
    };
    report.decompositions = Some(acc.count);
    report.core_labelings = acc.by_proj.keys().map(|k| pins_map(&names, k)).collect();
    report.status = match evaluate(g, &names, &acc) {
        None => Status::Pass,
        Some(f) => Status::Fail(f),
    };
    report
}

fn decomposition(labels: &[Label]) -> Witness {
    Witness::Decomposition { labels: labels.to_vec() }
}

fn evaluate(g: &PinnedGadget, names: &[&'static str], acc: &Acc) -> Option<Failure> {
    let fail = |clause, witness| Some(Failure { clause, witness });
    let partition = |pins: &[Label]| Witness::Partition { pins: pins_map(names, pins) };
    match g.kind {
        GadgetKind::MForcer => {
            if acc.count == 0 {
                return fail("existence", Witness::NoDecomposition);
            }
            if let Some(s) = acc.by_proj.get(&vec![F]) {
                return fail("pin_edge_in_matching", decomposition(&s.first));
            }
        }
        GadgetKind::FForcer => {
            if acc.count == 0 {
                return fail("existence", Witness::NoDecomposition);
            }
            let ell = g.ell.expect("f_forcer has ell") as usize;
            if let Some((_, w)) = acc.path_lengths.iter().find(|&(&len, _)| len != ell) {
                return fail("path_length", decomposition(w));
            }
        }
        GadgetKind::Or => {
            for pins in [[F, F], [F, M], [M, F], [M, M]] {
                if !acc.by_proj.keys().any(|k| k[..2] == pins) {
                    return fail("partition_realizable", partition(&pins));
                }
            }
            for (key, s) in &acc.by_proj {
                if key[0] == M && key[1] == M && key[2] != M {
                    return fail("matching_inputs_force_matching_output", decomposition(&s.first));
                }
                if (key[0] == F || key[1] == F) && key[2] != F {
                    return fail("forest_input_forces_forest_output", decomposition(&s.first));
                }
            }
        }
        GadgetKind::Rejector => {
            if let Some(s) = acc.by_proj.get(&vec![F, F]) {
                return fail("no_double_forest", decomposition(&s.first));
            }
            for pins in [[F, M], [M, F], [M, M]] {
                if acc.by_proj.get(pins.as_slice()).and_then(|s| s.clean.as_ref()).is_none() {
                    return fail("partition_realizable_with_short_paths", partition(&pins));
                }
            }
        }
        GadgetKind::Variable => {
            for e1 in [F, M] {
                for e2 in [F, M] {
                    for e in [F, M] {
                        let pins = vec![e1, e2, e];
                        let allowed = !(e == F && (e1 == F || e2 == F));
                        match (allowed, acc.by_proj.get(&pins)) {
                            (true, None) => return fail("allowed_partition_realizable", partition(&pins)),
                            (false, Some(s)) => return fail("forbidden_partition_excluded", decomposition(&s.first)),
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    None
}
