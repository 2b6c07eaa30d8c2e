//! One test per acceptance criterion. Each prints a `PASS`/`FAIL` line with
//! the measured numbers (visible with `--nocapture`).

use std::time::Instant;

use matchforest::classify::{classify, Complexity};
use matchforest::corpus::{connected_graphs, random_cnf, random_graph, random_graph_with_hub, random_sggf};
use matchforest::gadgets::{build_gadget, verify_gadget, GadgetKind, PinnedGadget, Status};
use matchforest::matching::max_matching;
use matchforest::mbsfd::{chain_profile, solve_mbsfd, solve_mbsfd_traced, ChainShape, EndKind, Route};
use matchforest::sat::{
    assignment_to_decomposition, brute_force_sat, build_reduction_graph, clashing_variables,
    decomposition_to_assignment, example_instance, CnfInstance,
};
use matchforest::sggf::{
    build_vertex_gadget, is_small_gap, solve_sggf, solve_sggf_oracle, validate_vertex_gadget, GapSet,
};
use matchforest::{
    graph::validate_labels, solve_exact, Decomposition, DecompositionSpec, ExactConfig, Execution, Graph, KBound,
    Label, MultiGraph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, name: &str, ok: bool, detail: String) {
    println!("{} [{id:02}] {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id} ({name}) failed: {detail}");
}

fn gadget(kind: GadgetKind, k: u32, ell: Option<u32>) -> PinnedGadget {
    build_gadget(kind, k, ell).unwrap()
}

#[test]
fn criterion_01_gadget_suite_k3() {
    let t = Instant::now();
    let cfg = ExactConfig::default();
    let mut list = vec![gadget(GadgetKind::MForcer, 3, None)];
    list.extend((1..=3).map(|ell| gadget(GadgetKind::FForcer, 3, Some(ell))));
    list.extend([GadgetKind::Or, GadgetKind::Rejector, GadgetKind::Variable].map(|k| gadget(k, 3, None)));
    let mut failed = Vec::new();
    let mut or_core = 0;
    for g in &list {
        let r = verify_gadget(g, &cfg);
        if !r.passed() {
            failed.push(format!("{}({:?})", g.kind, g.ell));
        }
        if g.kind == GadgetKind::Or {
            or_core = r.core_labelings.len();
        }
    }
    let secs = t.elapsed().as_secs_f64();
    let ok = failed.is_empty() && or_core == 4 && secs < 60.0;
    report(
        1,
        "gadget suite k=3",
        ok,
        format!("{} gadgets, failed {failed:?}, OR core labelings {or_core}, {secs:.2}s", list.len()),
    );
}

#[test]
fn criterion_02_m_forcer_breadth() {
    let t = Instant::now();
    let cfg = ExactConfig::default();
    let mut bad = Vec::new();
    let mut sizes = Vec::new();
    for k in 3..=9 {
        let g = gadget(GadgetKind::MForcer, k, None);
        sizes.push(g.graph.n());
        if !verify_gadget(&g, &cfg).passed() {
            bad.push(k);
        }
    }
    let secs = t.elapsed().as_secs_f64();
    report(
        2,
        "M-forcer k=3..9",
        bad.is_empty() && secs < 120.0,
        format!("failing k {bad:?}, vertex counts {sizes:?}, {secs:.2}s"),
    );
}

#[test]
fn criterion_03_or_and_rejector_breadth() {
    let cfg = ExactConfig::default();
    let mut lines = Vec::new();
    let mut ok = true;
    for (kind, pass_ks, cap_ks) in [(GadgetKind::Or, 3..=5, 6..=7), (GadgetKind::Rejector, 3..=4, 5..=6)] {
        for k in pass_ks {
            let passed = verify_gadget(&gadget(kind, k, None), &cfg).passed();
            ok &= passed;
            lines.push(format!("{kind}({k})={}", if passed { "pass" } else { "fail" }));
        }
        for k in cap_ks {
            let capped = matches!(verify_gadget(&gadget(kind, k, None), &cfg).status, Status::SizeCap { .. });
            ok &= capped;
            lines.push(format!("{kind}({k})={}", if capped { "size cap" } else { "not capped" }));
        }
    }
    report(3, "OR/REJECTOR breadth", ok, lines.join(", "));
}

fn mutation_failures(g: &PinnedGadget, cfg: &ExactConfig) -> (usize, usize) {
    let mut tried = 0;
    let mut failed = 0;
    let mut check = |m: PinnedGadget| {
        tried += 1;
        if verify_gadget(&m, cfg).failure().is_some() {
            failed += 1;
        }
    };
    for e in 0..g.graph.m() {
        if let Some(m) = g.without_edge(e) {
            check(m);
        }
    }
    for u in 0..g.graph.n() {
        for v in u + 1..g.graph.n() {
            if let Some(m) = g.with_edge(u, v) {
                check(m);
            }
        }
    }
    (failed, tried)
}

#[test]
fn criterion_04_mutation_sensitivity() {
    let cfg = ExactConfig::default();
    let mut ok = true;
    let mut lines = Vec::new();
    for kind in GadgetKind::ALL {
        let ell = (kind == GadgetKind::FForcer).then_some(2);
        let (failed, tried) = mutation_failures(&gadget(kind, 3, ell), &cfg);
        ok &= failed >= 10;
        lines.push(format!("{kind}: {failed}/{tried}"));
    }
    report(4, "mutation sensitivity k=3", ok, lines.join(", "));
}

/// Certificates from the satisfiable instances of the round-trip corpus.
fn sat_roundtrip() -> (Vec<String>, Vec<(CnfInstance, Decomposition)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut instances = vec![example_instance()];
    for _ in 0..100 {
        let vars = rng.gen_range(2..=8);
        instances.push(random_cnf(&mut rng, vars));
    }
    let mut errors = Vec::new();
    let mut certs = Vec::new();
    for (i, inst) in instances.iter().enumerate() {
        let Some(phi) = brute_force_sat(inst).unwrap() else {
            continue;
        };
        let red = build_reduction_graph(inst, 3).unwrap();
        let d = assignment_to_decomposition(inst, &red, &phi).unwrap();
        if !validate_labels(&d.graph, &d.labels, DecompositionSpec::linear(3)).is_empty() {
            errors.push(format!("instance {i}: certificate invalid"));
        }
        match decomposition_to_assignment(inst, &red.pins, &d) {
            Ok(a) if inst.satisfies(a.as_slice()) => {}
            other => errors.push(format!("instance {i}: read back {other:?}")),
        }
        certs.push((inst.clone(), d));
    }
    (errors, certs)
}

#[test]
fn criterion_05_sat_roundtrip() {
    let t = Instant::now();
    let example = example_instance();
    let example_ok =
        example.num_vars() == 6 && example.clauses().len() == 7 && brute_force_sat(&example).unwrap().is_some();
    let (errors, certs) = sat_roundtrip();
    let secs = t.elapsed().as_secs_f64();
    report(
        5,
        "SAT round trip",
        example_ok && errors.is_empty() && secs < 300.0,
        format!("{} satisfiable of 101, errors {errors:?}, {secs:.2}s", certs.len()),
    );
}

#[test]
fn criterion_06_clash_exclusion() {
    let mut clashes = 0;
    let (_, certs) = sat_roundtrip();
    for (inst, d) in &certs {
        let red = build_reduction_graph(inst, 3).unwrap();
        clashes += clashing_variables(&red.pins, &d.labels).len();
    }
    report(
        6,
        "clash exclusion",
        clashes == 0 && !certs.is_empty(),
        format!("{} certificates, {clashes} clashing variables", certs.len()),
    );
}

/// Validates every labelling of a chain between two degree-three vertices
/// (each padded with two pendant edges) and collects end-edge matching counts.
fn chain_brute(len: usize) -> Vec<u32> {
    let n = len + 1;
    let mut edges: Vec<(usize, usize)> = (0..len).map(|i| (i, i + 1)).collect();
    edges.extend([(0, n), (0, n + 1), (len, n + 2), (len, n + 3)]);
    let g = Graph::from_edges(n + 4, &edges).unwrap();
    let mut out = Vec::new();
    for mask in 0u32..1 << g.m() {
        let labels: Vec<Label> =
            (0..g.m()).map(|i| if mask >> i & 1 == 1 { Label::Matching } else { Label::Forest }).collect();
        if validate_labels(&g, &labels, DecompositionSpec::star(KBound::Infinite)).is_empty() {
            let m = |e: usize| (labels[e] == Label::Matching) as u32;
            out.push(if len == 1 { 2 * m(0) } else { m(0) + m(len - 1) });
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[test]
fn criterion_07_profile_table() {
    let want: [&[u32]; 9] = [&[2], &[1], &[0, 2], &[1, 2], &[0, 1, 2], &[0, 1, 2], &[0, 1, 2], &[0, 1, 2], &[0, 1, 2]];
    let mut ok = true;
    let mut rows = Vec::new();
    for len in 1..=9 {
        let got = chain_profile(&ChainShape::path(len, EndKind::High, EndKind::High), KBound::Finite(3)).achievable;
        ok &= got == want[len - 1] && got == chain_brute(len) && is_small_gap(&got);
        rows.push(format!("{len}:{got:?}"));
    }
    for len in 1..=9 {
        for shape in [
            ChainShape::path(len, EndKind::High, EndKind::Leaf),
            ChainShape::path(len, EndKind::Leaf, EndKind::Leaf),
            ChainShape::cycle(len + 2, true),
            ChainShape::cycle(len + 2, false),
        ] {
            ok &= is_small_gap(&chain_profile(&shape, KBound::Finite(3)).achievable);
        }
    }
    report(7, "profile table", ok, rows.join(" "));
}

const KS: [KBound; 4] = [KBound::Finite(2), KBound::Finite(3), KBound::Finite(4), KBound::Infinite];

#[test]
fn criterion_08_mbsfd_differential() {
    let t = Instant::now();
    let cfg = ExactConfig::default();
    let connected = connected_graphs(7);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut disagreements = 0;
    let mut invalid = 0;
    let mut checked = 0;
    for k in KS {
        let bound = k.finite().map_or(usize::MAX, |b| b as usize + 1);
        let random: Vec<Graph> = (0..2000)
            .map(|_| {
                let n = rng.gen_range(1..=10);
                random_graph(&mut rng, n, 10, bound)
            })
            .collect();
        for g in connected.iter().chain(&random) {
            checked += 1;
            let exact = solve_exact(g, DecompositionSpec::star(k), &cfg).unwrap();
            let fast = solve_mbsfd(g, k);
            disagreements += (exact.is_some() != fast.is_some()) as usize;
            invalid += fast.is_some_and(|d| !d.is_valid()) as usize;
        }
    }
    let secs = t.elapsed().as_secs_f64();
    report(
        8,
        "MBSFD differential",
        disagreements == 0 && invalid == 0 && secs < 600.0,
        format!("{checked} graph/k pairs ({} connected graphs), {disagreements} disagreements, {invalid} invalid, {secs:.2}s", connected.len()),
    );
}

#[test]
fn criterion_09_degree_obstruction() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut wrong = 0;
    for i in 0..100 {
        let k = 1 + i % 4;
        let degree = k as usize + 2 + rng.gen_range(0..3);
        let g = random_graph_with_hub(&mut rng, degree, 6);
        let (d, route) = solve_mbsfd_traced(&g, KBound::Finite(k), Execution::Sequential);
        wrong += (d.is_some() || !matches!(route, Route::DegreeObstruction { .. })) as usize;
    }
    report(9, "degree obstruction", wrong == 0, format!("100 graphs, {wrong} not rejected by the degree check"));
}

fn matching_brute(g: &MultiGraph) -> usize {
    fn go(g: &MultiGraph, from: usize, used: &mut [bool]) -> usize {
        let mut best = 0;
        for e in from..g.m() {
            let (u, v) = g.edge(e);
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                best = best.max(1 + go(g, e + 1, used));
                used[u] = false;
                used[v] = false;
            }
        }
        best
    }
    go(g, 0, &mut vec![false; g.n()])
}

fn is_matching(g: &MultiGraph, m: &[usize]) -> bool {
    let mut used = vec![false; g.n()];
    m.iter().all(|&e| {
        let (u, v) = g.edge(e);
        let free = !used[u] && !used[v];
        used[u] = true;
        used[v] = true;
        free
    })
}

#[test]
fn criterion_10_sggf_differential() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut disagreements = 0;
    for _ in 0..10_000 {
        let inst = random_sggf(&mut rng, 8, 5, 4);
        let fast = solve_sggf(&inst).unwrap();
        let slow = solve_sggf_oracle(&inst).unwrap();
        disagreements += (fast.is_some() != slow.is_some() || fast.is_some_and(|s| !inst.is_solution(&s))) as usize;
    }
    let mut gadget_failures = 0;
    let mut gadgets = 0;
    for d in 0..=6usize {
        for mask in 0u32..1 << (d + 1) {
            let members: Vec<u32> = (0..=d as u32).filter(|i| mask >> i & 1 == 1).collect();
            if is_small_gap(&members) {
                gadgets += 1;
                let g = build_vertex_gadget(d, &GapSet::new(members).unwrap());
                gadget_failures += validate_vertex_gadget(&g).is_err() as usize;
            }
        }
    }
    let mut matching_failures = 0;
    let mut graphs: Vec<MultiGraph> = connected_graphs(8).iter().map(MultiGraph::from).collect();
    for _ in 0..3000 {
        let n = rng.gen_range(2..=9);
        let mut g = MultiGraph::new(n);
        for _ in 0..rng.gen_range(0..=12) {
            let u = rng.gen_range(0..n);
            g.add_edge(u, (u + rng.gen_range(1..n)) % n).unwrap();
        }
        graphs.push(g);
    }
    for g in &graphs {
        let m = max_matching(g);
        matching_failures += (!is_matching(g, &m) || m.len() != matching_brute(g)) as usize;
    }
    let secs = t.elapsed().as_secs_f64();
    report(
        10,
        "SGGF differential",
        disagreements == 0 && gadget_failures == 0 && matching_failures == 0 && secs < 600.0,
        format!(
            "10000 instances with {disagreements} disagreements; {gadgets} gadgets with {gadget_failures} failures; {} matching graphs with {matching_failures} failures; {secs:.2}s",
            graphs.len()
        ),
    );
}

#[test]
fn criterion_11_classification() {
    use KBound::{Finite, Infinite};
    let grid = [Finite(1), Finite(2), Finite(3), Finite(4), Finite(9), Infinite];
    let mut poly = Vec::new();
    for k in grid {
        for l in grid {
            if classify(k, l) == Complexity::Polynomial {
                poly.push(format!("({k},{l})"));
            }
        }
    }
    report(11, "classification grid", poly == ["(1,1)", "(1,2)", "(2,1)"], format!("polynomial cells {poly:?}"));
}
