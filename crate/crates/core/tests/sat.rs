use matchforest::corpus::random_cnf;
use matchforest::graph::validate_labels;
use matchforest::sat::{
    assignment_to_decomposition, brute_force_sat, build_reduction_graph, clashing_variables,
    decomposition_to_assignment, example_instance, load_instance, unsatisfiable_instance,
};
use matchforest::{DecompositionSpec, Label};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn dimacs_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for vars in 2..=8 {
        let f = random_cnf(&mut rng, vars);
        assert_eq!(load_instance(&f.to_dimacs()).unwrap(), f);
    }
}

#[test]
fn round_trip_for_larger_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in [4, 5, 7] {
        for _ in 0..10 {
            let f = random_cnf(&mut rng, 4);
            let Some(phi) = brute_force_sat(&f).unwrap() else { continue };
            let red = build_reduction_graph(&f, k).unwrap();
            let d = assignment_to_decomposition(&f, &red, &phi).unwrap();
            assert!(validate_labels(&d.graph, &d.labels, DecompositionSpec::linear(k)).is_empty());
            assert!(f.satisfies(&decomposition_to_assignment(&f, &red.pins, &d).unwrap()));
            assert!(clashing_variables(&red.pins, &d.labels).is_empty());
        }
    }
}

#[test]
fn every_satisfying_assignment_of_the_example_lifts() {
    let f = example_instance();
    let red = build_reduction_graph(&f, 3).unwrap();
    let mut lifted = 0;
    for mask in 0u32..1 << f.num_vars() {
        let a: Vec<bool> = (0..f.num_vars()).map(|i| mask >> i & 1 == 1).collect();
        match assignment_to_decomposition(&f, &red, &a) {
            Ok(d) => {
                assert!(f.satisfies(&a));
                assert!(d.is_valid());
                lifted += 1;
            }
            Err(_) => assert!(!f.satisfies(&a)),
        }
    }
    assert!(lifted > 0);
}

#[test]
fn unsatisfiable_formula_has_no_assignment() {
    let f = unsatisfiable_instance();
    assert_eq!(brute_force_sat(&f).unwrap(), None);
    let red = build_reduction_graph(&f, 3).unwrap();
    let all_true = vec![true; f.num_vars()];
    assert!(assignment_to_decomposition(&f, &red, &all_true).is_err());
}

#[test]
fn tampered_certificate_is_refused() {
    let f = example_instance();
    let red = build_reduction_graph(&f, 3).unwrap();
    let phi = brute_force_sat(&f).unwrap().unwrap();
    let mut d = assignment_to_decomposition(&f, &red, &phi).unwrap();
    let e = red.pins.clauses[0].connectors[0].edge;
    d.labels[e] = match d.labels[e] {
        Label::Matching => Label::Forest,
        Label::Forest => Label::Matching,
    };
    assert!(decomposition_to_assignment(&f, &red.pins, &d).is_err());
}
