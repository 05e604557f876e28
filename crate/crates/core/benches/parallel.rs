//! Sequential against rayon execution for the data-parallel loops.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sockmatch_core::closedform::WalkSpec;
use sockmatch_core::oracle::{count_bounded_walks_oracle_with, enumerate_heights_with};
use sockmatch_core::sampler::estimate_hit_probability_with;
use sockmatch_core::table::b_table;
use sockmatch_core::trigsum::convergence_series_with;
use sockmatch_core::{Execution, Method, Model};
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_heights");
    group.sample_size(10);
    for n in [12u32, 14] {
        for (label, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(label, n), &n, |b, &n| {
                b.iter(|| enumerate_heights_with(black_box(n), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_walk_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("walk_oracle");
    group.sample_size(10);
    let spec = WalkSpec::new(10, 3, 4);
    for (label, exec) in MODES {
        group.bench_function(label, |b| {
            b.iter(|| count_bounded_walks_oracle_with(black_box(spec), exec).unwrap())
        });
    }
    group.finish();
}

fn bench_monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("monte_carlo");
    group.sample_size(10);
    for model in [Model::Uniform, Model::Physical] {
        for (label, exec) in MODES {
            group.bench_function(BenchmarkId::new(label, model), |b| {
                b.iter(|| estimate_hit_probability_with(model, 20, 5, 200_000, 1, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_exact_sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_sweeps");
    group.sample_size(10);
    for (label, exec) in MODES {
        group.bench_function(BenchmarkId::new("table_explicit_120", label), |b| {
            b.iter(|| b_table(120, 120, Method::Explicit, exec).unwrap())
        });
        group.bench_function(BenchmarkId::new("convergence_k4_400", label), |b| {
            b.iter(|| convergence_series_with(4, 400, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_enumeration,
    bench_walk_oracle,
    bench_monte_carlo,
    bench_exact_sweeps
);
criterion_main!(benches);
