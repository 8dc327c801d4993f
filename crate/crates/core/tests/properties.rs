#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use gtkc_core::gridtiling::{augment, random_instance, solve_bruteforce};
use gtkc_core::harness::{export, ExportFormat};
use gtkc_core::params::skeleton::skeleton_vertices;
use gtkc_core::paths::{canonical_path, AllPairs};
use gtkc_core::reduction::build;
use gtkc_core::{Exec, Rational};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_display_round_trips(p in -10_000i64..10_000, q in 1i64..500) {
        let r = Rational::new(p, q);
        let s = r.to_string();
        prop_assert!(s.contains('/'));
        prop_assert_eq!(s.parse::<Rational>().unwrap(), r);
    }

    #[test]
    fn distances_satisfy_triangle_inequality(n in 3usize..10, extra in 0usize..6, seed in any::<u64>()) {
        let g = random_graph(n, extra, 9, 4, seed);
        let apsp = AllPairs::compute(&g, Exec::Sequential).unwrap();
        let d = dist_matrix(&g);
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(apsp.dist(a, b), &d[a][b]);
                prop_assert_eq!(apsp.dist(a, b), apsp.dist(b, a));
                for c in 0..n {
                    prop_assert!(apsp.dist(a, c) <= &(apsp.dist(a, b) + apsp.dist(b, c)));
                }
            }
        }
    }

    #[test]
    fn parallel_and_sequential_trees_agree(n in 3usize..12, extra in 0usize..8, seed in any::<u64>()) {
        let g = random_graph(n, extra, 5, 2, seed);
        let a = AllPairs::compute(&g, Exec::Sequential).unwrap();
        let b = AllPairs::compute(&g, Exec::Parallel).unwrap();
        prop_assert_eq!(a.trees(), b.trees());
    }

    #[test]
    fn augmentation_preserves_solvability(chi in 2usize..4, n in 2u32..4, ppc in 1usize..4, seed in 0u64..1000) {
        let inst = random_instance(chi, n, ppc, seed).unwrap();
        let aug = augment(&inst).unwrap();
        prop_assert_eq!(solve_bruteforce(&inst).is_some(), solve_bruteforce(&aug).is_some());
    }

    #[test]
    fn skeleton_is_inherited_along_paths(n in 4usize..9, extra in 0usize..5, seed in 0u64..500) {
        // w in skeleton(u) and v on the path u..w imply w in skeleton(v).
        let g = unique_path_graph(n, extra, seed);
        let apsp = AllPairs::compute(&g, Exec::Sequential).unwrap();
        let skel: Vec<Vec<bool>> = (0..n).map(|s| skeleton_vertices(apsp.tree(s))).collect();
        for u in 0..n {
            for w in 0..n {
                if !skel[u][w] {
                    continue;
                }
                for v in canonical_path(&g, u, w).unwrap() {
                    prop_assert!(skel[v][w], "u={} v={} w={}", u, v, w);
                }
            }
        }
    }
}

#[test]
fn builds_are_deterministic() {
    for seed in 0..4 {
        let inst = gtkc_core::gridtiling::random_covered_instance(2, 3, 1, seed).unwrap();
        let a = export(&build(&inst).unwrap(), ExportFormat::Json);
        let b = export(&build(&inst).unwrap(), ExportFormat::Json);
        assert_eq!(a, b);
    }
}
