//! Maximum cardinality matching in general graphs (Edmonds' blossom algorithm).

use std::collections::{HashMap, VecDeque};

use crate::graph::MultiGraph;

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free far end.
    fn find_path(&mut self, root: usize) -> usize {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in &self.adj[v] {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let w = self.mate[to];
                    self.used[w] = true;
                    self.queue.push_back(w);
                }
            }
        }
        NONE
    }

    fn run(&mut self) {
        let n = self.adj.len();
        for v in 0..n {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(&u) = self.adj[v].iter().find(|&&u| self.mate[u] == NONE) {
                self.mate[v] = u;
                self.mate[u] = v;
            }
        }
        for v in 0..n {
            if self.mate[v] != NONE {
                continue;
            }
            let mut u = self.find_path(v);
            while u != NONE {
                let pv = self.parent[u];
                let next = self.mate[pv];
                self.mate[u] = pv;
                self.mate[pv] = u;
                u = next;
            }
        }
    }
}

/// A maximum matching of `g` as a sorted list of edge ids. Among parallel
/// edges the lowest id is used. The result is deterministic.
pub fn max_matching(g: &MultiGraph) -> Vec<usize> {
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    let mut first: HashMap<(usize, usize), usize> = HashMap::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if let std::collections::hash_map::Entry::Vacant(slot) = first.entry((u, v)) {
            slot.insert(e);
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut b = Blossom::new(&adj);
    b.run();
    let mut out: Vec<usize> =
        (0..n).filter(|&v| b.mate[v] != NONE && v < b.mate[v]).map(|v| first[&(v, b.mate[v])]).collect();
    out.sort_unstable();
    out
}

/// Whether `g` has a perfect matching.
pub fn has_perfect_matching(g: &MultiGraph) -> bool {
    2 * max_matching(g).len() == g.n()
}
