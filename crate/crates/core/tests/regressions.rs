use gtkc_core::gridtiling::{
    normalize, random_covered_instance, random_instance, solve_bruteforce, GtInstance, Normalization, Pair,
};
use gtkc_core::harness::{verify_equivalence, verify_structure, EquivalenceOptions};
use gtkc_core::hitting::NodeBudget;
use gtkc_core::kcenter::decide;
use gtkc_core::params::{doubling_profile, window_diameter};
use gtkc_core::paths::distance;
use gtkc_core::reduction::{build, solution_to_centers, VertexLabel};
use gtkc_core::{Exec, Rational};

fn p(a: u32, b: u32) -> Pair {
    Pair::new(a, b)
}

/// A b-covered instance whose every solution picks `(a, n)` in the last
/// column: built directly, the anchor `x^2_{i,chi}` ends up farther than the
/// threshold from every center, so the direct graph has no solution.
fn last_column_instance() -> GtInstance {
    let inst = GtInstance::new(
        2,
        2,
        vec![
            vec![p(1, 1), p(2, 2)],
            vec![p(1, 2), p(2, 1)],
            vec![p(1, 1), p(2, 2)],
            vec![p(1, 1), p(2, 2)],
        ],
    )
    .unwrap();
    assert_eq!(inst, random_instance(2, 2, 2, 2).unwrap());
    inst
}

#[test]
fn direct_build_misses_last_column_anchor() {
    let inst = last_column_instance();
    let sol = solve_bruteforce(&inst).expect("solvable");
    let direct = build(&inst).unwrap();
    let centers = solution_to_centers(&direct, &sol).unwrap();
    assert!(centers.cost > direct.threshold);
    assert!(
        decide(&direct.graph, direct.k, &direct.threshold, NodeBudget::unlimited())
            .unwrap()
            .is_none()
    );

    let v = verify_equivalence("last-column", &inst, &EquivalenceOptions::default()).unwrap();
    assert_eq!(v.normalization, Normalization::Augmented);
    assert!(v.gt_solvable && v.fully_consistent(), "{v:?}");
}

#[test]
fn vertical_y_to_y_distance_is_37_at_n2() {
    let inst = GtInstance::uniform(2, 2, &[p(1, 1), p(2, 2)]).unwrap();
    let r = build(&inst).unwrap();
    let y = |i, j| r.vertex(&VertexLabel::Y { i, j }).unwrap();
    assert_eq!(distance(&r.graph, y(1, 1), y(2, 1)).unwrap(), Rational::integer(37));
    assert_eq!(distance(&r.graph, y(1, 2), y(2, 2)).unwrap(), Rational::integer(37));
    assert_eq!(distance(&r.graph, y(1, 1), y(1, 2)).unwrap(), Rational::integer(36));
    assert!(verify_structure(&r).unwrap().all_passed());
}

#[test]
fn chi1_with_n1_is_embedded() {
    let inst = GtInstance::uniform(1, 1, &[p(1, 1)]).unwrap();
    assert_eq!(normalize(&inst).unwrap().kind, Normalization::EmbeddedThenAugmented);
    let v = verify_equivalence("n1", &inst, &EquivalenceOptions::default()).unwrap();
    assert!(v.gt_solvable && v.fully_consistent(), "{v:?}");
}

#[test]
fn window_diameters_stay_within_bounds() {
    let n = 2u32;
    let r = build(&random_covered_instance(3, n, 1, 7).unwrap()).unwrap();
    let pow = |k: u32| Rational::integer(1 << k);
    let single = &(&pow(n + 3) + &pow(n + 1)) + &Rational::integer(4);
    for i in 1..=3 {
        for j in 1..=3 {
            let d0 = window_diameter(&r, i, j, 0, Exec::default()).unwrap();
            assert!(d0 <= single, "gadget ({i},{j}) diameter {d0}");
        }
    }
    let full = window_diameter(&r, 2, 2, 1, Exec::default()).unwrap();
    let three = Rational::integer(3);
    let lower = &(&pow(n + 2) + &pow(n)) * &three;
    let upper = &(&(&(&pow(n + 3) + &pow(n + 1)) + &pow(n)) + &Rational::integer(2)) * &three;
    assert!(lower <= full && full <= upper, "3x3 window diameter {full}");
}

#[test]
fn doubling_does_not_grow_with_chi() {
    let t1 = build(&GtInstance::uniform(1, 2, &[p(1, 1), p(2, 2)]).unwrap()).unwrap();
    let two = build(&GtInstance::uniform(2, 2, &[p(1, 1), p(2, 2)]).unwrap()).unwrap();
    let a = doubling_profile(&t1.graph, 200, NodeBudget::unlimited(), Exec::default()).unwrap();
    let b = doubling_profile(&two.graph, 200, NodeBudget::unlimited(), Exec::default()).unwrap();
    assert_eq!(a.passes_d, b.passes_d);
}
