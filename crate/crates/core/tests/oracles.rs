mod common;

use common::*;
use gtkc_core::graph::{cycle_graph, path_graph};
use gtkc_core::gridtiling::{random_covered_instance, GtInstance, Pair};
use gtkc_core::hitting::NodeBudget;
use gtkc_core::kcenter::{approx2, solve_exact};
use gtkc_core::params::{
    build_path_decomposition, cut_points, highway_dimension_exact, pathwidth_exact_tiny, skeleton_profile,
    verify_path_decomposition,
};
use gtkc_core::paths::dijkstra;
use gtkc_core::reduction::build;
use gtkc_core::{Exec, Rational};

#[test]
fn solve_exact_matches_enumeration() {
    for seed in 0..20u64 {
        let n = 5 + (seed as usize % 8);
        let g = random_graph(n, seed as usize % 5, 9, 3, seed);
        let k = 1 + seed as usize % 4;
        let exact = solve_exact(&g, k, NodeBudget::unlimited()).unwrap();
        assert_eq!(exact.cost, kcenter_bruteforce(&g, k), "seed {seed}");
        assert!(exact.len() <= k);
        let apx = approx2(&g, k).unwrap();
        assert!(apx.cost <= &exact.cost * &Rational::integer(2), "seed {seed}");
    }
}

#[test]
fn skeleton_matches_sampled_definition() {
    for seed in 0..10u64 {
        let n = 3 + (seed as usize % 6);
        let g = random_graph(n, seed as usize % 4, 6, 2, 100 + seed);
        for s in 0..n {
            let tree = dijkstra(&g, s).unwrap();
            let prof = skeleton_profile(&g, s).unwrap();
            for r in skeleton_sample_radii(&tree) {
                assert_eq!(prof.cut_at(&r), sampled_cut(&tree, &r), "seed {seed} source {s} r {r}");
                assert_eq!(cut_points(&g, &tree, &r).len(), prof.cut_at(&r));
            }
        }
    }
}

#[test]
fn skeleton_star_and_path() {
    let star = gtkc_core::graph::star_graph(3);
    let tree = dijkstra(&star, 0).unwrap();
    for r in skeleton_sample_radii(&tree) {
        let expected = if r.is_zero() {
            1
        } else if r <= Rational::new(2, 3) {
            3
        } else {
            0
        };
        assert_eq!(sampled_cut(&tree, &r), expected, "r {r}");
    }
    assert_eq!(skeleton_profile(&path_graph(3), 0).unwrap().max_cut.1, 1);
}

#[test]
fn highway_exact_matches_exhaustive() {
    for seed in 0..5u64 {
        let n = 6 + seed as usize % 5;
        let g = unique_path_graph(n, 2 + seed as usize % 3, seed);
        let exact = highway_dimension_exact(&g, 64, NodeBudget::unlimited(), Exec::default()).unwrap();
        assert_eq!(exact.value, highway_bruteforce(&g), "seed {seed}");
    }
    let p = path_graph(5);
    assert_eq!(
        highway_dimension_exact(&p, 64, NodeBudget::unlimited(), Exec::Sequential)
            .unwrap()
            .value,
        highway_bruteforce(&p)
    );
}

#[test]
fn pathwidth_oracles() {
    assert_eq!(pathwidth_exact_tiny(&path_graph(9)).unwrap(), 1);
    assert_eq!(pathwidth_exact_tiny(&cycle_graph(9)).unwrap(), 2);
    for seed in 0..8u64 {
        let g = random_graph(4 + seed as usize % 4, seed as usize % 5, 3, 1, 200 + seed);
        assert_eq!(
            pathwidth_exact_tiny(&g).unwrap(),
            vertex_separation_bruteforce(&g),
            "seed {seed}"
        );
    }
    let mut insts = vec![GtInstance::uniform(1, 2, &[Pair::new(1, 1), Pair::new(2, 2)]).unwrap()];
    insts.extend((0..4).map(|s| random_covered_instance(1, 2, s as usize % 3, s).unwrap()));
    for inst in insts {
        let r = build(&inst).unwrap();
        let (c, pd) = build_path_decomposition(&r).unwrap();
        let width = verify_path_decomposition(&c.graph, &pd).unwrap();
        assert!(pathwidth_exact_tiny(&c.graph).unwrap() <= width);
    }
}
