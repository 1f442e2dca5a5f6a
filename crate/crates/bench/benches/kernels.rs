use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use indecomp_bench::{extended_reduction, random_hermitian};
use indecomp_core::optim::{decompose_witness, ppt_violation_search, SearchParams};
use indecomp_core::{certify, hermitian_eig, jamiolkowski_witness, reduction_map};

fn eigensolver(c: &mut Criterion) {
    let mut group = c.benchmark_group("hermitian_eig");
    for n in [4, 9, 16, 36] {
        let h = random_hermitian(n, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| {
            b.iter(|| hermitian_eig(black_box(h)).unwrap())
        });
    }
    group.finish();
}

fn map_application(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply_extended_reduction");
    for d in [4, 6] {
        let m = extended_reduction(d);
        let rho = random_hermitian(d, 7);
        group.bench_with_input(BenchmarkId::from_parameter(d), &rho, |b, rho| {
            b.iter(|| m.apply(black_box(rho)).unwrap())
        });
    }
    group.finish();
}

fn certification(c: &mut Criterion) {
    let m = extended_reduction(4);
    c.bench_function("certify_extended_reduction_d4_100_trials", |b| {
        b.iter(|| certify(black_box(&m), 100, 1).unwrap())
    });
}

fn numerics(c: &mut Criterion) {
    let mut group = c.benchmark_group("optim");
    group.sample_size(10);
    let w_r = jamiolkowski_witness(&reduction_map(4).unwrap()).unwrap();
    group.bench_function("decompose_reduction_d4", |b| {
        b.iter(|| decompose_witness(black_box(&w_r), 10_000, 1e-8).unwrap())
    });
    let w_e = jamiolkowski_witness(&extended_reduction(4)).unwrap();
    let params = SearchParams {
        restarts: 1,
        max_iter: 50,
        ..SearchParams::default()
    };
    group.bench_function("search_extended_reduction_d4_50_iter", |b| {
        b.iter(|| ppt_violation_search(black_box(&w_e), &params).unwrap())
    });
    group.finish();
}

criterion_group!(benches, eigensolver, map_application, certification, numerics);
criterion_main!(benches);
