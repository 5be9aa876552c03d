//! Rayon pool versus a single worker on the hot paths. Building with
//! `--no-default-features` swaps in the plain iterator fallback instead.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hilbert_kronecker::kronecker::{Bounds, KroneckerSeries, SingularCross};
use hilbert_kronecker::periods::rc_sweep;
use hilbert_kronecker::qseries::eisenstein;
use rayon::{ThreadPool, ThreadPoolBuilder};

fn pools() -> Vec<(&'static str, ThreadPool)> {
    let single = ThreadPoolBuilder::new().num_threads(1).build().expect("pool");
    let all = ThreadPoolBuilder::new().build().expect("pool");
    vec![("sequential", single), ("parallel", all)]
}

fn series_product(c: &mut Criterion) {
    let mut group = c.benchmark_group("fourier_mul");
    let f = eisenstein(4, 5, 8).unwrap();
    let g = eisenstein(6, 5, 8).unwrap();
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, "D5_B8"), |b| {
            pool.install(|| b.iter(|| f.mul(&g).unwrap()))
        });
    }
    group.finish();
}

fn kronecker_layer(c: &mut Criterion) {
    let mut group = c.benchmark_group("raw_layer");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, "D5_k8_B4"), |b| {
            pool.install(|| {
                b.iter(|| {
                    let ks = KroneckerSeries::new(
                        5,
                        Bounds {
                            trace_bound: 4,
                            xy_degree: 8,
                        },
                        8,
                    )
                    .unwrap();
                    ks.raw_layer(8, SingularCross::Untwisted).unwrap()
                })
            })
        });
    }
    group.finish();
}

fn bracket_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("rc_sweep");
    group.sample_size(10);
    let ks = KroneckerSeries::new(
        5,
        Bounds {
            trace_bound: 3,
            xy_degree: 10,
        },
        10,
    )
    .unwrap();
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, "D5_k10_B3"), |b| {
            pool.install(|| b.iter(|| rc_sweep(&ks, 10).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, series_product, kronecker_layer, bracket_sweep);
criterion_main!(benches);
