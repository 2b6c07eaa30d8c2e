//! Complexity of matching plus bounded linear forest decomposition.

use std::fmt;

use serde::Serialize;

use crate::graph::KBound;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Complexity {
    NpComplete,
    Polynomial,
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Complexity::NpComplete => "NP_COMPLETE",
            Complexity::Polynomial => "POLYNOMIAL",
        })
    }
}

/// Splitting into a `k`-bounded linear forest and an `l`-bounded one is
/// NP-complete iff `k + l >= 4`; an infinite bound counts as at least four.
///
/// # Panics
///
/// When `k` or `l` is zero.
pub fn classify(k: KBound, l: KBound) -> Complexity {
    assert!(k != KBound::Finite(0) && l != KBound::Finite(0), "bounds start at one");
    let size = |b: KBound| b.finite().map_or(4, |x| x.min(4));
    if size(k) + size(l) >= 4 {
        Complexity::NpComplete
    } else {
        Complexity::Polynomial
    }
}
