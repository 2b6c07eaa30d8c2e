//! Matching + bounded forest edge decompositions.
//!
//! A graph is split into a matching and a forest whose components are bounded
//! paths (linear forests) or bounded stars. The crate provides a validator, an
//! exact backtracking solver, the hardness gadgets and the SAT reduction for the
//! linear case, and a polynomial solver for the star case that goes through the
//! small-gap general factor problem.

pub mod classify;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod matching;
pub mod mbsfd;
pub mod par;
pub mod sat;
pub mod sggf;

pub use error::*;
pub use exact::{solve_exact, ExactConfig};
pub use graph::{
    validate_decomposition, Decomposition, DecompositionSpec, Graph, KBound, Label, MultiGraph, Violation,
};
pub use par::Execution;
