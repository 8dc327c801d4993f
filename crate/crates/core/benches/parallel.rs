use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gtkc_core::gridtiling::random_covered_instance;
use gtkc_core::harness::structure::verify_structure_with;
use gtkc_core::params::{highway_witness, skeleton_dimension};
use gtkc_core::paths::AllPairs;
use gtkc_core::reduction::{build, ReducedInstance};
use gtkc_core::{Exec, Rational};

fn instance(chi: usize) -> ReducedInstance {
    build(&random_covered_instance(chi, 2, 1, 7).unwrap()).unwrap()
}

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn all_pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("all_pairs");
    group.sample_size(10);
    for chi in [1, 2] {
        let r = instance(chi);
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, chi), &r, |b, r| {
                b.iter(|| AllPairs::compute(&r.graph, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn skeleton(c: &mut Criterion) {
    let mut group = c.benchmark_group("skeleton_dimension");
    group.sample_size(10);
    let r = instance(2);
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| skeleton_dimension(&r.graph, exec).unwrap()));
    }
    group.finish();
}

fn structure(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_structure");
    group.sample_size(10);
    let r = instance(2);
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| verify_structure_with(&r, exec).unwrap()));
    }
    group.finish();
}

fn highway(c: &mut Criterion) {
    let mut group = c.benchmark_group("highway_witness");
    group.sample_size(10);
    let r = instance(2);
    let radius = Rational::integer(4);
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| highway_witness(&r, &radius, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, all_pairs, skeleton, structure, highway);
criterion_main!(benches);
