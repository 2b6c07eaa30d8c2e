//! Seeded generators for test corpora.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, MultiGraph};
use crate::sat::{CnfInstance, Literal};
use crate::sggf::{is_small_gap, GapSet, SggfInstance};

/// A random simple graph on `n` vertices with at most `max_edges` edges and
/// maximum degree at most `max_degree`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, max_edges: usize, max_degree: usize) -> Graph {
    let mut g = Graph::new(n);
    if n < 2 {
        return g;
    }
    let target = rng.gen_range(0..=max_edges);
    for _ in 0..4 * target {
        if g.m() == target {
            break;
        }
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && !g.has_edge(u, v) && g.degree(u) < max_degree && g.degree(v) < max_degree {
            g.add_edge(u, v).expect("checked");
        }
    }
    g
}

/// A random graph in which vertex 0 has degree exactly `degree`, plus up to
/// `extra` further edges.
pub fn random_graph_with_hub<R: Rng>(rng: &mut R, degree: usize, extra: usize) -> Graph {
    let n = degree + 1 + rng.gen_range(0..=3);
    let mut g = Graph::new(n);
    let mut others: Vec<usize> = (1..n).collect();
    others.shuffle(rng);
    for &v in &others[..degree] {
        g.add_edge(0, v).expect("distinct");
    }
    for _ in 0..extra {
        let u = rng.gen_range(1..n);
        let v = rng.gen_range(1..n);
        if u != v && !g.has_edge(u, v) {
            g.add_edge(u, v).expect("checked");
        }
    }
    g
}

/// A random formula in which every clause has two or three literals over
/// distinct variables and each variable occurs twice positively and once
/// negatively. Needs `num_vars >= 2`.
pub fn random_cnf<R: Rng>(rng: &mut R, num_vars: usize) -> CnfInstance {
    assert!(num_vars >= 2, "at least two variables");
    loop {
        let mut lits: Vec<Literal> =
            (0..num_vars).flat_map(|v| [Literal::pos(v), Literal::pos(v), Literal::neg(v)]).collect();
        lits.shuffle(rng);
        let mut clauses = Vec::new();
        let mut rest = &lits[..];
        while !rest.is_empty() {
            let size = match rest.len() {
                2 | 4 => 2,
                3 => 3,
                _ => rng.gen_range(2..=3),
            };
            clauses.push(rest[..size].to_vec());
            rest = &rest[size..];
        }
        if let Ok(inst) = CnfInstance::new(num_vars, clauses) {
            return inst;
        }
    }
}

/// A random small-gap set drawn from subsets of `0..=hi`, nonempty.
pub fn random_gap_set<R: Rng>(rng: &mut R, hi: u32) -> GapSet {
    loop {
        let members: Vec<u32> = (0..=hi).filter(|_| rng.gen_bool(0.5)).collect();
        if !members.is_empty() && is_small_gap(&members) {
            return GapSet::new(members).expect("checked");
        }
    }
}

/// A random factor instance with at most `max_edges` edges (parallel edges
/// allowed), degrees at most `max_degree` and sets inside `0..=set_max`.
pub fn random_sggf<R: Rng>(rng: &mut R, max_edges: usize, max_degree: usize, set_max: u32) -> SggfInstance {
    let n = rng.gen_range(1..=6);
    let mut g = MultiGraph::new(n);
    if n > 1 {
        for _ in 0..rng.gen_range(0..=max_edges) {
            let u = rng.gen_range(0..n);
            let v = (u + rng.gen_range(1..n)) % n;
            if g.degree(u) < max_degree && g.degree(v) < max_degree {
                g.add_edge(u, v).expect("distinct endpoints");
            }
        }
    }
    let sets = (0..n).map(|_| random_gap_set(rng, set_max)).collect();
    SggfInstance::new(g, sets).expect("one nonempty set per vertex")
}

fn canonical(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| g.degree(v));
    // Permute only inside classes of equal degree.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if g.degree(c[0]) == g.degree(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut perm: Vec<Vec<usize>> = classes.clone();
    fn next_perm(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            p.reverse();
            return false;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }
    for c in &mut perm {
        c.sort_unstable();
    }
    loop {
        let mut pos = vec![0; n];
        for (i, v) in perm.iter().flatten().enumerate() {
            pos[*v] = i;
        }
        let mut e: Vec<(usize, usize)> =
            g.edges().iter().map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v]))).collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
        // Odometer over the per-class permutations.
        let mut i = 0;
        while i < perm.len() && !next_perm(&mut perm[i]) {
            i += 1;
        }
        if i == perm.len() {
            break;
        }
    }
    best.expect("at least one ordering")
}

/// Every connected graph with between one and `max_edges` edges, one per
/// isomorphism class, ordered by edge count.
pub fn connected_graphs(max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    let mut level: Vec<Graph> =
        if max_edges == 0 { vec![] } else { vec![Graph::from_edges(2, &[(0, 1)]).expect("edge")] };
    while let Some(first) = level.first() {
        let m = first.m();
        out.extend(level.iter().cloned());
        if m == max_edges {
            break;
        }
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            let n = g.n();
            let mut grow = |h: Graph| {
                if seen.insert(canonical(&h)) {
                    next.push(h);
                }
            };
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        let mut h = g.clone();
                        h.add_edge(u, v).expect("new edge");
                        grow(h);
                    }
                }
                let mut h = g.clone();
                let w = h.add_vertex();
                h.add_edge(u, w).expect("new vertex");
                grow(h);
            }
        }
        level = next;
    }
    out
}
