use std::collections::BTreeMap;

use super::{Embedding, GadgetKind, PinnedGadget};
use crate::error::GadgetError;
use crate::graph::Graph;

/// Edge tables for the M-forcer cases. Vertex `v` is the pin; the first edge
/// is the pin edge.
const M3_VERTICES: &[&str] = &["v", "x", "y", "v1", "v2", "v3", "u1", "u2", "u3"];
const M3_EDGES: &[(&str, &str)] =
    &[("y", "v"), ("x", "y"), ("x", "u1"), ("x", "v1"), ("v1", "v2"), ("v1", "v3"), ("u1", "u2"), ("u1", "u3")];

const M45_VERTICES: &[&str] =
    &["v", "x", "xv", "yv", "xu", "yu", "v1", "v2", "v3", "v4", "v5", "u1", "u2", "u3", "u4", "u5"];
const M45_EDGES: &[(&str, &str)] = &[
    ("x", "v"),
    ("x", "xv"),
    ("xv", "yv"),
    ("xv", "v1"),
    ("v1", "v2"),
    ("v1", "v3"),
    ("v2", "v3"),
    ("v2", "v4"),
    ("v3", "v5"),
    ("v4", "v5"),
    ("x", "xu"),
    ("xu", "yu"),
    ("xu", "u1"),
    ("u1", "u2"),
    ("u1", "u3"),
    ("u2", "u3"),
    ("u2", "u4"),
    ("u3", "u5"),
    ("u4", "u5"),
];

const M67_VERTICES: &[&str] = &[
    "v", "x", "xv", "yv", "xu", "yu", "v1", "v2", "v3", "v4", "v5", "v6", "v7", "u1", "u2", "u3", "u4", "u5", "u6",
    "u7",
];
const M67_EDGES: &[(&str, &str)] = &[
    ("x", "v"),
    ("x", "xv"),
    ("xv", "yv"),
    ("xv", "v1"),
    ("v1", "v2"),
    ("v1", "v3"),
    ("v2", "v3"),
    ("v2", "v4"),
    ("v3", "v5"),
    ("v4", "v5"),
    ("v4", "v6"),
    ("v5", "v7"),
    ("v6", "v7"),
    ("x", "xu"),
    ("xu", "yu"),
    ("xu", "u1"),
    ("u1", "u2"),
    ("u1", "u3"),
    ("u2", "u3"),
    ("u2", "u4"),
    ("u3", "u5"),
    ("u4", "u5"),
    ("u4", "u6"),
    ("u5", "u7"),
    ("u6", "u7"),
];

const M8_VERTICES: &[&str] = &["v", "x", "v1", "v2", "v3", "v4", "u1", "u2", "u3", "u4"];
const M8_EDGES: &[(&str, &str)] = &[
    ("x", "v"),
    ("x", "u1"),
    ("x", "v1"),
    ("v1", "v2"),
    ("v1", "v3"),
    ("v2", "v3"),
    ("v2", "v4"),
    ("v3", "v4"),
    ("u1", "u2"),
    ("u1", "u3"),
    ("u2", "u3"),
    ("u2", "u4"),
    ("u3", "u4"),
];

#[derive(Default)]
struct Builder {
    g: Graph,
    vertex_pins: BTreeMap<String, usize>,
    edge_pins: BTreeMap<String, usize>,
    parts: Vec<Embedding>,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.g.add_vertex()
    }

    fn edge(&mut self, u: usize, v: usize) -> usize {
        self.g.add_edge(u, v).expect("gadget tables are simple graphs")
    }

    fn pin_vertex(&mut self, name: &str, v: usize) {
        self.vertex_pins.insert(name.to_string(), v);
    }

    fn pin_edge(&mut self, name: &str, e: usize) {
        self.edge_pins.insert(name.to_string(), e);
    }

    fn embed(&mut self, sub: &PinnedGadget, fixed: &[(usize, usize)]) -> Embedding {
        let emb = embed_into(&mut self.g, sub, fixed);
        self.parts.push(emb.clone());
        emb
    }

    fn finish(self, kind: GadgetKind, k: u32, ell: Option<u32>) -> PinnedGadget {
        PinnedGadget {
            kind,
            k,
            ell,
            graph: self.g,
            vertex_pins: self.vertex_pins,
            edge_pins: self.edge_pins,
            parts: self.parts,
        }
    }
}

/// Copies `sub` into `host`. Vertices listed in `fixed` as `(sub, host)`
/// pairs map to the given host vertices; the rest are created in `sub`'s
/// order. Edges already present in the host are shared, not duplicated.
pub(crate) fn embed_into(host: &mut Graph, sub: &PinnedGadget, fixed: &[(usize, usize)]) -> Embedding {
    let vertices: Vec<usize> = (0..sub.graph.n())
        .map(|v| match fixed.iter().find(|&&(s, _)| s == v) {
            Some(&(_, h)) => h,
            None => host.add_vertex(),
        })
        .collect();
    let edges = sub
        .graph
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (u, v) = (vertices[a], vertices[b]);
            host.edge_id(u, v).unwrap_or_else(|| host.add_edge(u, v).expect("embedding keeps the host simple"))
        })
        .collect();
    Embedding { kind: sub.kind, k: sub.k, ell: sub.ell, vertices, edges }
}

/// Builds a gadget. `ell` is required for `FForcer` and rejected otherwise.
pub fn build_gadget(kind: GadgetKind, k: u32, ell: Option<u32>) -> Result<PinnedGadget, GadgetError> {
    if k < 3 {
        return Err(GadgetError::Parameter(format!("k must be at least 3, got {k}")));
    }
    match (kind, ell) {
        (GadgetKind::FForcer, None) => Err(GadgetError::Parameter("f_forcer needs ell".into())),
        (GadgetKind::FForcer, Some(l)) if l < 1 || l > k => {
            Err(GadgetError::Parameter(format!("ell must lie in 1..={k}, got {l}")))
        }
        (GadgetKind::FForcer, Some(l)) => Ok(f_forcer(k, l)),
        (_, Some(_)) => Err(GadgetError::Parameter(format!("ell is only meaningful for f_forcer, not {kind}"))),
        (GadgetKind::MForcer, None) => Ok(m_forcer(k)),
        (GadgetKind::Or, None) => Ok(or_gadget(k)),
        (GadgetKind::Rejector, None) => Ok(rejector(k)),
        (GadgetKind::Variable, None) => Ok(variable(k)),
    }
}

fn m_forcer(k: u32) -> PinnedGadget {
    let (names, table) = match k {
        3 => (M3_VERTICES, M3_EDGES),
        4 | 5 => (M45_VERTICES, M45_EDGES),
        6 | 7 => (M67_VERTICES, M67_EDGES),
        _ => (M8_VERTICES, M8_EDGES),
    };
    let mut b = Builder::default();
    for _ in names {
        b.vertex();
    }
    let at = |s: &str| names.iter().position(|&n| n == s).expect("table names are declared");
    for &(u, v) in table {
        b.edge(at(u), at(v));
    }
    b.pin_vertex("v", 0);
    b.pin_edge("e", 0);
    b.finish(GadgetKind::MForcer, k, None)
}

fn f_forcer(k: u32, ell: u32) -> PinnedGadget {
    let m = m_forcer(k);
    let pin = m.vertex("v");
    let mut b = Builder::default();
    let v = b.vertex();
    b.pin_vertex("v", v);
    if ell == 1 {
        let copy = b.embed(&m, &[]);
        let e = b.edge(v, copy.vertices[pin]);
        b.pin_edge("e", e);
    } else {
        let mut path = vec![v];
        for _ in 1..ell {
            let copy = b.embed(&m, &[]);
            path.push(copy.vertices[pin]);
        }
        path.push(b.vertex());
        for (i, w) in path.windows(2).enumerate() {
            let e = b.edge(w[0], w[1]);
            if i == 0 {
                b.pin_edge("e", e);
            }
        }
    }
    b.finish(GadgetKind::FForcer, k, Some(ell))
}

fn or_gadget(k: u32) -> PinnedGadget {
    let forcer = f_forcer(k, k - 2);
    let mut b = Builder::default();
    let p1 = b.vertex();
    let p2 = b.vertex();
    let o = b.vertex();
    let x = b.vertex();
    let v1 = b.vertex();
    let copy = b.embed(&forcer, &[]);
    let v2 = copy.vertices[forcer.vertex("v")];
    let f = b.edge(x, o);
    b.edge(v1, x);
    b.edge(v2, x);
    let e1 = b.edge(p1, v1);
    let e2 = b.edge(p2, v2);
    for (name, v) in [("p1", p1), ("p2", p2), ("o", o)] {
        b.pin_vertex(name, v);
    }
    for (name, e) in [("e1", e1), ("e2", e2), ("f", f)] {
        b.pin_edge(name, e);
    }
    b.finish(GadgetKind::Or, k, None)
}

fn rejector(k: u32) -> PinnedGadget {
    let h = (k / 2) as usize;
    let forcer = f_forcer(k, k - 2);
    let mut b = Builder::default();
    let n_prime = b.vertex();
    let n = b.vertex();
    let u: Vec<usize> = (0..=h).map(|_| b.vertex()).collect();
    let w: Vec<usize> = (0..h).map(|_| b.vertex()).collect();
    for j in 0..h {
        let copy = b.embed(&forcer, &[]);
        let vj = copy.vertices[forcer.vertex("v")];
        b.edge(vj, w[j]);
        b.edge(w[j], u[j]);
        b.edge(w[j], u[j + 1]);
    }
    let e_prime = b.edge(n_prime, u[0]);
    let e = b.edge(n, u[h]);
    b.pin_vertex("n'", n_prime);
    b.pin_vertex("n", n);
    b.pin_vertex("o", u[0]);
    b.pin_edge("e'", e_prime);
    b.pin_edge("e", e);
    b.finish(GadgetKind::Rejector, k, None)
}

fn variable(k: u32) -> PinnedGadget {
    let or = or_gadget(k);
    let rej = rejector(k);
    let mut b = Builder::default();
    let p1 = b.vertex();
    let p2 = b.vertex();
    let n = b.vertex();
    let o_copy = b.embed(&or, &[(or.vertex("p1"), p1), (or.vertex("p2"), p2)]);
    let o = o_copy.vertices[or.vertex("o")];
    let f = o_copy.edges[or.edge("f")];
    let centre = b.g.other(f, o);
    let r_copy = b.embed(&rej, &[(rej.vertex("n'"), centre), (rej.vertex("o"), o), (rej.vertex("n"), n)]);
    debug_assert_eq!(r_copy.edges[rej.edge("e'")], f);
    b.pin_vertex("p1", p1);
    b.pin_vertex("p2", p2);
    b.pin_vertex("n", n);
    b.pin_edge("e1", o_copy.edges[or.edge("e1")]);
    b.pin_edge("e2", o_copy.edges[or.edge("e2")]);
    b.pin_edge("e", r_copy.edges[rej.edge("e")]);
    b.pin_edge("e'", f);
    b.finish(GadgetKind::Variable, k, None)
}
