//! Builders for the forcer, OR, rejector and variable gadgets.
//!
//! Vertex numbering: pin vertices first, then interior vertices in the order of
//! the drawings. Embedded sub-gadgets are numbered after the vertices of the
//! host that precede them, in their own numbering.

mod build;
mod fill;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

pub use build::build_gadget;
pub(crate) use build::embed_into;
pub use fill::{canonical_fill, or_fill, rejector_fill, variable_fill};
pub use verify::{verify_gadget, Failure, GadgetReport, Status, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetKind {
    MForcer,
    FForcer,
    Or,
    Rejector,
    Variable,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 5] =
        [GadgetKind::MForcer, GadgetKind::FForcer, GadgetKind::Or, GadgetKind::Rejector, GadgetKind::Variable];

    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::MForcer => "m_forcer",
            GadgetKind::FForcer => "f_forcer",
            GadgetKind::Or => "or",
            GadgetKind::Rejector => "rejector",
            GadgetKind::Variable => "variable",
        }
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GadgetKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase().replace('-', "_");
        GadgetKind::ALL.into_iter().find(|k| k.name() == t).ok_or_else(|| {
            format!("unknown gadget kind `{s}`; expected one of m_forcer, f_forcer, or, rejector, variable")
        })
    }
}

/// A copy of a smaller gadget inside a larger one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub kind: GadgetKind,
    pub k: u32,
    pub ell: Option<u32>,
    /// Host vertex of every sub-gadget vertex.
    pub vertices: Vec<usize>,
    /// Host edge of every sub-gadget edge.
    pub edges: Vec<usize>,
}

/// A gadget graph together with its named pin vertices and pin edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinnedGadget {
    pub kind: GadgetKind,
    pub k: u32,
    pub ell: Option<u32>,
    pub graph: Graph,
    pub vertex_pins: BTreeMap<String, usize>,
    pub edge_pins: BTreeMap<String, usize>,
    /// Directly embedded sub-gadgets, in construction order.
    pub parts: Vec<Embedding>,
}

impl PinnedGadget {
    pub fn vertex(&self, name: &str) -> usize {
        self.vertex_pins[name]
    }

    pub fn edge(&self, name: &str) -> usize {
        self.edge_pins[name]
    }

    /// Pin vertices whose definition requires degree one.
    pub fn degree_one_pins(&self) -> Vec<&str> {
        let names: &[&str] = match self.kind {
            GadgetKind::MForcer | GadgetKind::FForcer => &["v"],
            GadgetKind::Or => &["p1", "p2", "o"],
            GadgetKind::Rejector => &["n'", "n"],
            GadgetKind::Variable => &["p1", "p2", "n"],
        };
        names.to_vec()
    }

    /// The pin edges whose labels are constrained by the gadget's definition,
    /// in a fixed order.
    pub fn core_edges(&self) -> Vec<(&'static str, usize)> {
        self.core_edges_checked().expect("built gadgets carry every pin")
    }

    /// The JSON pin sidecar: kind, parameters and every pin index.
    pub fn sidecar(&self) -> PinSidecar {
        let mut pins = BTreeMap::new();
        for (n, &v) in &self.vertex_pins {
            pins.insert(n.clone(), v);
        }
        for (n, &e) in &self.edge_pins {
            pins.insert(n.clone(), e);
        }
        PinSidecar {
            kind: self.kind,
            k: self.k,
            ell: self.ell,
            pins,
            vertex_pins: self.vertex_pins.keys().cloned().collect(),
            edge_pins: self.edge_pins.keys().cloned().collect(),
        }
    }

    /// Rebuilds a gadget from a graph and its sidecar. Embedding data is not
    /// serialised, so `parts` is empty.
    pub fn from_sidecar(graph: Graph, side: &PinSidecar) -> Result<Self, String> {
        let mut vertex_pins = BTreeMap::new();
        let mut edge_pins = BTreeMap::new();
        for name in &side.vertex_pins {
            let &v = side.pins.get(name).ok_or_else(|| format!("pin `{name}` missing"))?;
            if v >= graph.n() {
                return Err(format!("pin `{name}` = {v} is not a vertex"));
            }
            vertex_pins.insert(name.clone(), v);
        }
        for name in &side.edge_pins {
            let &e = side.pins.get(name).ok_or_else(|| format!("pin `{name}` missing"))?;
            if e >= graph.m() {
                return Err(format!("pin `{name}` = {e} is not an edge"));
            }
            edge_pins.insert(name.clone(), e);
        }
        let g = PinnedGadget {
            kind: side.kind,
            k: side.k,
            ell: side.ell,
            graph,
            vertex_pins,
            edge_pins,
            parts: Vec::new(),
        };
        g.core_edges_checked()?;
        Ok(g)
    }

    /// The gadget with edge `e` removed, or `None` if `e` is a pin edge.
    /// Later edge indices shift down by one; embedding data is dropped.
    pub fn without_edge(&self, e: usize) -> Option<PinnedGadget> {
        if self.edge_pins.values().any(|&p| p == e) {
            return None;
        }
        let mut graph = Graph::new(self.graph.n());
        for (i, &(u, v)) in self.graph.edges().iter().enumerate() {
            if i != e {
                graph.add_edge(u, v).expect("subgraph of a simple graph");
            }
        }
        let edge_pins = self.edge_pins.iter().map(|(n, &p)| (n.clone(), if p > e { p - 1 } else { p })).collect();
        Some(PinnedGadget { graph, edge_pins, parts: Vec::new(), vertex_pins: self.vertex_pins.clone(), ..*self })
    }

    /// The gadget with the new edge `uv` appended, or `None` if it exists,
    /// is a loop, or touches a pin vertex.
    pub fn with_edge(&self, u: usize, v: usize) -> Option<PinnedGadget> {
        if self.vertex_pins.values().any(|&p| p == u || p == v) {
            return None;
        }
        let mut graph = self.graph.clone();
        graph.add_edge(u, v).ok()?;
        Some(PinnedGadget {
            graph,
            parts: Vec::new(),
            vertex_pins: self.vertex_pins.clone(),
            edge_pins: self.edge_pins.clone(),
            ..*self
        })
    }

    fn core_edges_checked(&self) -> Result<Vec<(&'static str, usize)>, String> {
        let names: &[&'static str] = match self.kind {
            GadgetKind::MForcer | GadgetKind::FForcer => &["e"],
            GadgetKind::Or => &["e1", "e2", "f"],
            GadgetKind::Rejector => &["e'", "e"],
            GadgetKind::Variable => &["e1", "e2", "e"],
        };
        names
            .iter()
            .map(|&n| self.edge_pins.get(n).map(|&e| (n, e)).ok_or_else(|| format!("edge pin `{n}` missing")))
            .collect()
    }
}

/// Serialised pin data for a gadget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinSidecar {
    pub kind: GadgetKind,
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ell: Option<u32>,
    pub pins: BTreeMap<String, usize>,
    pub vertex_pins: Vec<String>,
    pub edge_pins: Vec<String>,
}
