use matchforest::graph::MultiGraph;
use matchforest::sggf::{
    build_vertex_gadget, is_small_gap, solve_sggf, solve_sggf_oracle, validate_vertex_gadget, GapSet, SggfInstance,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_set(rng: &mut ChaCha8Rng, hi: u32) -> GapSet {
    loop {
        let members: Vec<u32> = (0..=hi).filter(|_| rng.gen_bool(0.5)).collect();
        if !members.is_empty() && is_small_gap(&members) {
            return GapSet::new(members).unwrap();
        }
    }
}

fn random_instance(rng: &mut ChaCha8Rng) -> SggfInstance {
    let n = rng.gen_range(1..=6);
    let m = if n == 1 { 0 } else { rng.gen_range(0..=9) };
    let mut g = MultiGraph::new(n);
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let v = (u + rng.gen_range(1..n)) % n;
        g.add_edge(u, v).unwrap();
    }
    let sets = (0..n).map(|v| random_set(rng, g.degree(v) as u32 + 1)).collect();
    SggfInstance::new(g, sets).unwrap()
}

#[test]
fn solver_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..3000 {
        let inst = random_instance(&mut rng);
        let fast = solve_sggf(&inst).unwrap();
        let slow = solve_sggf_oracle(&inst).unwrap();
        assert_eq!(fast.is_some(), slow.is_some(), "{inst:?}");
        if let Some(s) = fast {
            assert!(inst.is_solution(&s));
        }
    }
}

#[test]
fn every_small_gap_gadget_up_to_degree_five_validates() {
    for d in 0..=5usize {
        for mask in 0u32..(1 << (d + 1)) {
            let members: Vec<u32> = (0..=d as u32).filter(|i| mask >> i & 1 == 1).collect();
            if !is_small_gap(&members) {
                continue;
            }
            let g = build_vertex_gadget(d, &GapSet::new(members.clone()).unwrap());
            assert_eq!(validate_vertex_gadget(&g), Ok(()), "d={d} A={members:?}");
        }
    }
}

/// Kuhn's augmenting-path matching on a bipartite graph given as left
/// adjacency lists.
fn kuhn(left: &[Vec<usize>], right: usize) -> usize {
    fn augment(u: usize, left: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &left[u] {
            if !seen[v] {
                seen[v] = true;
                if owner[v].is_none_or(|w| augment(w, left, seen, owner)) {
                    owner[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; right];
    (0..left.len()).filter(|&u| augment(u, left, &mut vec![false; right], &mut owner)).count()
}

#[test]
fn bipartite_matching_agrees_with_augmenting_paths() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..2000 {
        let a = rng.gen_range(1..=7);
        let b = rng.gen_range(1..=7);
        let mut g = MultiGraph::new(a + b);
        let mut left = vec![Vec::new(); a];
        for _ in 0..rng.gen_range(0..=16) {
            let (u, v) = (rng.gen_range(0..a), rng.gen_range(0..b));
            g.add_edge(u, a + v).unwrap();
            left[u].push(v);
        }
        assert_eq!(matchforest::matching::max_matching(&g).len(), kuhn(&left, b));
    }
}
