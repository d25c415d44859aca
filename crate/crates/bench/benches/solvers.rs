use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use diskscale_bench::{dense_instance, sparse_instance};
use diskscale_core::geom::GraphClass;
use diskscale_core::{solve_cluster_fpt, solve_complete, solve_xp, DEFAULT_LP_SEED};

fn xp(c: &mut Criterion) {
    let mut g = c.benchmark_group("xp_cluster");
    g.sample_size(10);
    for n in [8, 16, 24] {
        let inst = sparse_instance(n, 2, DEFAULT_LP_SEED);
        g.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| solve_xp(inst, GraphClass::Cluster).unwrap())
        });
    }
    g.finish();
}

fn cluster_fpt(c: &mut Criterion) {
    let mut g = c.benchmark_group("cluster_fpt");
    g.sample_size(10);
    for n in [8, 16, 32, 64] {
        let inst = sparse_instance(n, 2, DEFAULT_LP_SEED);
        g.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| b.iter(|| solve_cluster_fpt(inst).unwrap()));
    }
    g.finish();
}

fn complete(c: &mut Criterion) {
    let mut g = c.benchmark_group("complete");
    for n in [8, 32, 128] {
        let inst = dense_instance(n, 2, DEFAULT_LP_SEED);
        g.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| b.iter(|| solve_complete(inst).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, xp, cluster_fpt, complete);
criterion_main!(benches);
