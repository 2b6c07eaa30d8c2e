use serde::{Deserialize, Serialize};

use super::CnfInstance;
use crate::error::SatError;
use crate::exact::{solve_exact, ExactConfig};
use crate::gadgets::{build_gadget, embed_into, variable_fill, GadgetKind};
use crate::graph::{validate_labels, Decomposition, DecompositionSpec, Graph, Label};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariablePins {
    /// Positive input vertices, for the first and second positive occurrence.
    pub positive_vertices: [usize; 2],
    pub negative_vertex: usize,
    pub positive_edges: [usize; 2],
    pub negative_edge: usize,
    /// Clauses of the two positive and the negative occurrence.
    pub clauses: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connector {
    pub var: usize,
    pub positive: bool,
    pub edge: usize,
    /// The input vertex of the variable gadget that the connector reaches.
    pub input_vertex: usize,
    /// The gadget input edge at that vertex.
    pub input_edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClausePins {
    pub vertex: usize,
    pub connectors: Vec<Connector>,
    /// Pin edge of the forcer attached to a two-literal clause.
    pub forcer_edge: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionPinMap {
    pub k: u32,
    pub variables: Vec<VariablePins>,
    pub clauses: Vec<ClausePins>,
}

/// The reduction graph with its pins and the host edges of every embedded
/// gadget, in gadget edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub graph: Graph,
    pub pins: ReductionPinMap,
    pub variable_edges: Vec<Vec<usize>>,
    pub forcer_edges: Vec<Option<Vec<usize>>>,
}

fn check_k(k: u32) -> Result<(), SatError> {
    if k < 3 {
        return Err(SatError::BadK { k });
    }
    Ok(())
}

/// Builds the reduction graph: a vertex per clause, a variable gadget per
/// variable, a connector edge per occurrence and a (1F,k)-forcer at every
/// two-literal clause.
///
/// Vertices: clause vertices first, then the variable gadgets in variable
/// order, then the forcers in clause order. Edges: gadget edges, forcer
/// edges, then connectors in clause order.
pub fn build_reduction_graph(inst: &CnfInstance, k: u32) -> Result<Reduction, SatError> {
    check_k(k)?;
    let var = build_gadget(GadgetKind::Variable, k, None).expect("k >= 3");
    let forcer = build_gadget(GadgetKind::FForcer, k, Some(1)).expect("k >= 3");
    let nc = inst.clauses().len();
    let mut g = Graph::new(nc);
    let mut variables = Vec::with_capacity(inst.num_vars());
    let mut variable_edges = Vec::with_capacity(inst.num_vars());
    for x in 0..inst.num_vars() {
        let emb = embed_into(&mut g, &var, &[]);
        let occ = inst.occurrences(x);
        variables.push(VariablePins {
            positive_vertices: [emb.vertices[var.vertex("p1")], emb.vertices[var.vertex("p2")]],
            negative_vertex: emb.vertices[var.vertex("n")],
            positive_edges: [emb.edges[var.edge("e1")], emb.edges[var.edge("e2")]],
            negative_edge: emb.edges[var.edge("e")],
            clauses: [occ.positive[0], occ.positive[1], occ.negative],
        });
        variable_edges.push(emb.edges);
    }
    let mut forcer_edges = vec![None; nc];
    let mut forcer_pin = vec![None; nc];
    for (c, clause) in inst.clauses().iter().enumerate() {
        if clause.len() == 2 {
            let emb = embed_into(&mut g, &forcer, &[(forcer.vertex("v"), c)]);
            forcer_pin[c] = Some(emb.edges[forcer.edge("e")]);
            forcer_edges[c] = Some(emb.edges);
        }
    }
    let mut clauses = Vec::with_capacity(nc);
    for (c, clause) in inst.clauses().iter().enumerate() {
        let mut connectors = Vec::new();
        for lit in clause {
            let vp = &variables[lit.var];
            let (input_vertex, input_edge) = if lit.positive {
                let slot = if vp.clauses[0] == c { 0 } else { 1 };
                (vp.positive_vertices[slot], vp.positive_edges[slot])
            } else {
                (vp.negative_vertex, vp.negative_edge)
            };
            let edge = g.add_edge(c, input_vertex).expect("fresh connector");
            connectors.push(Connector { var: lit.var, positive: lit.positive, edge, input_vertex, input_edge });
        }
        clauses.push(ClausePins { vertex: c, connectors, forcer_edge: forcer_pin[c] });
    }
    Ok(Reduction { graph: g, pins: ReductionPinMap { k, variables, clauses }, variable_edges, forcer_edges })
}

/// The decomposition built from a satisfying assignment.
///
/// Each clause picks its lowest-index satisfied literal as witness. The
/// witness connector goes to the matching and its gadget input edge to the
/// forest; all other connectors go to the forest with their input edges in
/// the matching. Forcer pin edges are forest edges.
pub fn assignment_to_decomposition(
    inst: &CnfInstance,
    red: &Reduction,
    assignment: &[bool],
) -> Result<Decomposition, SatError> {
    if assignment.len() != inst.num_vars() {
        return Err(SatError::AssignmentLength { got: assignment.len(), expected: inst.num_vars() });
    }
    if let Some(clause) = inst.first_unsatisfied(assignment) {
        return Err(SatError::Unsatisfied { clause });
    }
    let k = red.pins.k;
    let spec = DecompositionSpec::linear(k);
    let mut labels = vec![Label::Forest; red.graph.m()];
    let mut input = vec![[Label::Matching; 3]; inst.num_vars()];
    for (c, clause) in inst.clauses().iter().enumerate() {
        let witness = clause
            .iter()
            .enumerate()
            .filter(|(_, l)| l.eval(assignment))
            .min_by_key(|(_, l)| l.var)
            .map(|(i, _)| i)
            .expect("clause is satisfied");
        for (i, conn) in red.pins.clauses[c].connectors.iter().enumerate() {
            let vp = &red.pins.variables[conn.var];
            let slot = if !conn.positive {
                2
            } else if vp.clauses[0] == c {
                0
            } else {
                1
            };
            if i == witness {
                labels[conn.edge] = Label::Matching;
                input[conn.var][slot] = Label::Forest;
            } else {
                labels[conn.edge] = Label::Forest;
            }
        }
    }
    let var = build_gadget(GadgetKind::Variable, k, None).expect("k >= 3");
    for (x, edges) in red.variable_edges.iter().enumerate() {
        let [a, b, c] = input[x];
        let fill = variable_fill(&var, a, b, c).expect("a satisfying assignment never clashes");
        for (i, &e) in edges.iter().enumerate() {
            labels[e] = fill[i];
        }
    }
    let forcer = build_gadget(GadgetKind::FForcer, k, Some(1)).expect("k >= 3");
    let cfg = ExactConfig { max_edges: usize::MAX, ..ExactConfig::sequential() };
    let forcer_labels = solve_exact(&forcer.graph, spec, &cfg)?.expect("forcers are decomposable").labels;
    debug_assert_eq!(forcer_labels[forcer.edge("e")], Label::Forest);
    for edges in red.forcer_edges.iter().flatten() {
        for (i, &e) in edges.iter().enumerate() {
            labels[e] = forcer_labels[i];
        }
    }
    Ok(Decomposition::new(red.graph.clone(), labels, spec).expect("one label per edge"))
}

/// Reads an assignment off a decomposition: a variable is true iff one of its
/// positive input edges is a forest edge.
pub fn decomposition_to_assignment(
    inst: &CnfInstance,
    pins: &ReductionPinMap,
    d: &Decomposition,
) -> Result<Vec<bool>, SatError> {
    if pins.variables.len() != inst.num_vars() || pins.clauses.len() != inst.clauses().len() {
        return Err(SatError::GraphMismatch);
    }
    let max_edge = pins.variables.iter().flat_map(|v| v.positive_edges.iter().chain([&v.negative_edge])).max();
    if max_edge.is_some_and(|&e| e >= d.labels.len()) {
        return Err(SatError::GraphMismatch);
    }
    let violations = validate_labels(&d.graph, &d.labels, DecompositionSpec::linear(pins.k));
    if !violations.is_empty() {
        return Err(SatError::InvalidDecomposition(violations));
    }
    let assignment: Vec<bool> =
        pins.variables.iter().map(|v| v.positive_edges.iter().any(|&e| d.labels[e] == Label::Forest)).collect();
    if let Some(clause) = inst.first_unsatisfied(&assignment) {
        return Err(SatError::Inconsistent { clause });
    }
    Ok(assignment)
}

/// Variables whose negative input edge and some positive input edge are
/// both forest edges.
pub fn clashing_variables(pins: &ReductionPinMap, labels: &[Label]) -> Vec<usize> {
    pins.variables
        .iter()
        .enumerate()
        .filter(|(_, v)| {
            labels[v.negative_edge] == Label::Forest && v.positive_edges.iter().any(|&e| labels[e] == Label::Forest)
        })
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::{brute_force_sat, example_instance, Literal};

    #[test]
    fn example_graph_shape() {
        let inst = example_instance();
        let red = build_reduction_graph(&inst, 3).unwrap();
        let var = build_gadget(GadgetKind::Variable, 3, None).unwrap();
        let forcer = build_gadget(GadgetKind::FForcer, 3, Some(1)).unwrap();
        let connectors: usize = inst.clauses().iter().map(Vec::len).sum();
        assert_eq!(connectors, 18);
        let twos = inst.clauses().iter().filter(|c| c.len() == 2).count();
        assert_eq!(twos, 3);
        assert_eq!(red.graph.n(), 7 + 6 * var.graph.n() + twos * (forcer.graph.n() - 1));
        assert_eq!(red.graph.m(), 6 * var.graph.m() + twos * forcer.graph.m() + connectors);
        assert!(red.graph.max_degree() <= 3);
        for c in &red.pins.clauses {
            assert_eq!(red.graph.degree(c.vertex), 3);
        }
        for v in &red.pins.variables {
            for &p in v.positive_vertices.iter().chain([&v.negative_vertex]) {
                assert_eq!(red.graph.degree(p), 2);
            }
        }
    }

    #[test]
    fn example_round_trip() {
        let inst = example_instance();
        let red = build_reduction_graph(&inst, 3).unwrap();
        let phi = brute_force_sat(&inst).unwrap().unwrap();
        let d = assignment_to_decomposition(&inst, &red, &phi).unwrap();
        assert_eq!(d.validate(), vec![]);
        for c in &red.pins.clauses {
            if let Some(e) = c.forcer_edge {
                assert_eq!(d.labels[e], Label::Forest);
            }
        }
        let back = decomposition_to_assignment(&inst, &red.pins, &d).unwrap();
        assert!(inst.satisfies(&back));
        assert!(clashing_variables(&red.pins, &d.labels).is_empty());
    }

    #[test]
    fn unsatisfying_assignment_rejected() {
        let inst = example_instance();
        let red = build_reduction_graph(&inst, 3).unwrap();
        // Clause 1 is (x1 ∨ x3), all positive.
        assert_eq!(inst.clauses()[1], vec![Literal::pos(0), Literal::pos(2)]);
        let err = assignment_to_decomposition(&inst, &red, &[false; 6]).unwrap_err();
        assert_eq!(err, SatError::Unsatisfied { clause: 1 });
    }

    #[test]
    fn rule_reads_positive_edges() {
        let inst = example_instance();
        let red = build_reduction_graph(&inst, 3).unwrap();
        let phi = brute_force_sat(&inst).unwrap().unwrap();
        let d = assignment_to_decomposition(&inst, &red, &phi).unwrap();
        let back = decomposition_to_assignment(&inst, &red.pins, &d).unwrap();
        for (x, v) in red.pins.variables.iter().enumerate() {
            let forest = v.positive_edges.iter().any(|&e| d.labels[e] == Label::Forest);
            assert_eq!(back[x], forest);
        }
    }

    #[test]
    fn larger_k_round_trip() {
        let inst = example_instance();
        let phi = brute_force_sat(&inst).unwrap().unwrap();
        for k in 3..=8 {
            let red = build_reduction_graph(&inst, k).unwrap();
            let d = assignment_to_decomposition(&inst, &red, &phi).unwrap();
            assert_eq!(d.validate(), vec![], "k={k}");
            assert!(inst.satisfies(&decomposition_to_assignment(&inst, &red.pins, &d).unwrap()));
        }
    }
}
