use thiserror::Error;

use crate::graph::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("{labels} labels given for {edges} edges")]
    LabelCount { labels: usize, edges: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("graph has {edges} edges, above the exact-solver cap of {cap}")]
    SizeCap { edges: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("gadget parameters out of range: {0}")]
    Parameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("clause {clause} has {size} literals; only 2 or 3 are allowed")]
    ClauseSize { clause: usize, size: usize },
    #[error("clause {clause} mentions variable {var} more than once")]
    RepeatedVariable { clause: usize, var: usize },
    #[error("variable {var} occurs {positive} times positively and {negative} times negatively; expected 2 and 1")]
    Occurrence { var: usize, positive: usize, negative: usize },
    #[error("literal refers to variable {var}, but the instance has {num_vars}")]
    VariableOutOfRange { var: usize, num_vars: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatError {
    #[error("brute force is limited to {limit} variables, got {vars}")]
    TooManyVariables { vars: usize, limit: usize },
    #[error("assignment has {got} values for {expected} variables")]
    AssignmentLength { got: usize, expected: usize },
    #[error("assignment does not satisfy clause {clause}")]
    Unsatisfied { clause: usize },
    #[error("the reduction needs k >= 3, got {k}")]
    BadK { k: u32 },
    #[error("decomposition is invalid: {} violation(s)", .0.len())]
    InvalidDecomposition(Vec<Violation>),
    #[error("decomposition does not belong to this reduction graph")]
    GraphMismatch,
    #[error("extracted assignment leaves clause {clause} unsatisfied")]
    Inconsistent { clause: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SggfError {
    #[error("set {set:?} has a gap larger than one")]
    NotSmallGap { set: Vec<u32> },
    #[error("{sets} sets given for {vertices} vertices")]
    SetCount { sets: usize, vertices: usize },
    #[error("the exponential oracle is limited to {limit} edges, got {edges}")]
    TooManyEdges { edges: usize, limit: usize },
    #[error("vertex {vertex} has an empty set")]
    EmptySet { vertex: usize },
    #[error("matching produced an edge set that violates a vertex set")]
    GadgetInvalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MbsfdError {
    #[error("chain {chain} has no witness labelling for the selected boundary")]
    MissingWitness { chain: usize },
    #[error("edge set refers to edge {edge}, but the instance has {edges}")]
    EdgeOutOfRange { edge: usize, edges: usize },
    #[error("vertex {vertex} has degree {degree}, more than k + 1")]
    DegreeTooLarge { vertex: usize, degree: usize },
}
