//! Criterion benchmarks for the data-parallel kernels, comparing the rayon
//! path against the sequential fallback on the same workloads.
//!
//! With default features both arms run; building with
//! `--no-default-features` leaves only the sequential arm.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use opal::algebra_core::AlgebraKind;
use opal::exact_linalg::{decompose, rank, SparseMatrix};
use opal::homology_theories::{ce_complex, leibniz_complex, theory_homology, Budget, TheoryTag};
use opal::matrix_families::{rings, sl, MatrixAlgebraSpec};
use opal::par::Threading;

fn modes() -> Vec<(&'static str, Threading)> {
    let mut out = vec![("sequential", Threading::Sequential)];
    #[cfg(feature = "parallel")]
    out.push(("parallel", Threading::Parallel));
    out
}

/// The degree-3 Chevalley-Eilenberg differential of sl_3(Q[e]/e2): a
/// representative sparse exact-elimination workload.
fn ce_d3_matrix() -> SparseMatrix {
    let spec = MatrixAlgebraSpec::new(rings::dual_numbers(), 3, AlgebraKind::Lie).unwrap();
    let s = sl(&spec).unwrap();
    let complex = ce_complex(&s.algebra, 3, &Budget::default()).unwrap();
    complex.differential(3)
}

fn bench_rank(c: &mut Criterion) {
    let m = ce_d3_matrix();
    let mut group = c.benchmark_group("sparse_rank_ce_d3_sl3_dual");
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| opal::par::scoped(mode, || black_box(rank(black_box(&m)))));
        });
    }
    group.finish();
}

fn bench_decompose(c: &mut Criterion) {
    let m = ce_d3_matrix();
    let mut group = c.benchmark_group("sparse_decompose_ce_d3_sl3_dual");
    group.sample_size(20);
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| opal::par::scoped(mode, || black_box(decompose(black_box(&m)).rank)));
        });
    }
    group.finish();
}

fn bench_ce_homology(c: &mut Criterion) {
    let spec = MatrixAlgebraSpec::new(rings::rationals(), 4, AlgebraKind::Lie).unwrap();
    let s = sl(&spec).unwrap();
    let mut group = c.benchmark_group("ce_homology_sl4_q_deg3");
    group.sample_size(10);
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| {
                opal::par::scoped(mode, || {
                    let h =
                        theory_homology(TheoryTag::CE, &s.algebra, 3, &Budget::default()).unwrap();
                    black_box(h.dim(3))
                })
            });
        });
    }
    group.finish();
}

fn bench_leibniz_complex_build(c: &mut Criterion) {
    let spec = MatrixAlgebraSpec::new(rings::dual_numbers(), 2, AlgebraKind::Leibniz).unwrap();
    let s = sl(&spec).unwrap();
    let mut group = c.benchmark_group("leibniz_complex_sl2_dual_deg4");
    group.sample_size(10);
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| {
                opal::par::scoped(mode, || {
                    let complex = leibniz_complex(&s.algebra, 4, &Budget::default()).unwrap();
                    black_box(complex.dim(4))
                })
            });
        });
    }
    group.finish();
}

criterion_group!(
    kernels,
    bench_rank,
    bench_decompose,
    bench_ce_homology,
    bench_leibniz_complex_build
);
criterion_main!(kernels);
