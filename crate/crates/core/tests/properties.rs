use matchforest::io::{parse_graph, write_graph, Certificate};
use matchforest::mbsfd::{chain_decompose, solve_mbsfd};
use matchforest::sggf::{is_small_gap, solve_sggf, solve_sggf_oracle, GapSet, SggfInstance};
use matchforest::{solve_exact, DecompositionSpec, ExactConfig, Graph, KBound, MultiGraph};
use proptest::prelude::*;

fn graph_strategy(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_m).prop_map(move |pairs| {
            let mut g = Graph::new(n);
            for (u, v) in pairs {
                if u != v && !g.has_edge(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
            g
        })
    })
}

fn spec_strategy() -> impl Strategy<Value = DecompositionSpec> {
    let bound = prop_oneof![(1u32..=4).prop_map(KBound::Finite), Just(KBound::Infinite)];
    prop_oneof![
        (1u32..=4, bound.clone()).prop_map(|(k, l)| DecompositionSpec::Linear { k: KBound::Finite(k), l }),
        bound.prop_map(|k| DecompositionSpec::Star { k }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn graph_text_round_trips(g in graph_strategy(9, 14)) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn exact_solutions_validate(g in graph_strategy(8, 11), spec in spec_strategy()) {
        if let Some(d) = solve_exact(&g, spec, &ExactConfig::default()).unwrap() {
            prop_assert_eq!(d.validate(), vec![]);
            let cert = Certificate::of(&d);
            let back: Certificate = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
            prop_assert!(back.attach(g).unwrap().is_valid());
        }
    }

    #[test]
    fn star_solver_matches_exact(g in graph_strategy(9, 11), k in prop_oneof![(1u32..=4).prop_map(KBound::Finite), Just(KBound::Infinite)]) {
        let exact = solve_exact(&g, DecompositionSpec::star(k), &ExactConfig::default()).unwrap();
        let fast = solve_mbsfd(&g, k);
        prop_assert_eq!(exact.is_some(), fast.is_some());
        if let Some(d) = fast {
            prop_assert!(d.is_valid());
        }
    }

    #[test]
    fn chains_partition_the_edges(g in graph_strategy(10, 15)) {
        let mut edges: Vec<usize> = chain_decompose(&g).chains.iter().flat_map(|c| c.edges.clone()).collect();
        edges.sort_unstable();
        prop_assert_eq!(edges, (0..g.m()).collect::<Vec<_>>());
    }

    #[test]
    fn gap_sets_serialize(members in prop::collection::btree_set(0u32..8, 0..6)) {
        let v: Vec<u32> = members.into_iter().collect();
        match GapSet::new(v.clone()) {
            Ok(s) => {
                prop_assert!(is_small_gap(&v));
                let back: GapSet = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
                prop_assert_eq!(back, s);
            }
            Err(_) => prop_assert!(!is_small_gap(&v)),
        }
    }

    #[test]
    fn factor_solver_matches_oracle(
        n in 2usize..=5,
        pairs in prop::collection::vec((0usize..5, 1usize..5), 0..=8),
        sets in prop::collection::vec((0u32..4, 0u32..3, any::<bool>()), 5),
    ) {
        let mut g = MultiGraph::new(n);
        for (u, d) in pairs {
            let u = u % n;
            g.add_edge(u, (u + d % (n - 1) + 1) % n).unwrap();
        }
        // Interval or progression from a start, a span and a step flag.
        let sets: Vec<GapSet> = sets[..n]
            .iter()
            .map(|&(a, span, two)| GapSet::new((0..=span).map(|i| a + if two { 2 * i } else { i })).unwrap())
            .collect();
        let inst = SggfInstance::new(g, sets).unwrap();
        prop_assert_eq!(solve_sggf(&inst).unwrap().is_some(), solve_sggf_oracle(&inst).unwrap().is_some());
    }
}
