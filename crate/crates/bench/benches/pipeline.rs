use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use amn_bench::{sample_points, POLY_ORDERS};
use amn_core::field::{loss_yau_residual, weyl_dirac_residual, ZeroModeField, DEFAULT_STEP};
use amn_core::recurrence::build_amn_polynomial;
use amn_core::roots::{rational_root_oracle, verify_factorization_of};

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_polynomial");
    group.sample_size(10);
    for &m in POLY_ORDERS {
        group.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| {
            b.iter(|| build_amn_polynomial(black_box(m)).unwrap())
        });
    }
    group.finish();
}

fn factorization(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_factorization");
    group.sample_size(10);
    for &m in POLY_ORDERS {
        let poly = build_amn_polynomial(m).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(m), &poly, |b, poly| {
            b.iter(|| verify_factorization_of(m, black_box(&poly.rational)).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("rational_root_oracle");
    group.sample_size(10);
    for m in [10, 26] {
        let poly = build_amn_polynomial(m).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(m), &poly, |b, poly| {
            b.iter(|| rational_root_oracle(black_box(&poly.integer)).unwrap())
        });
    }
    group.finish();
}

fn residual_sweep(c: &mut Criterion) {
    let points = sample_points(100);
    let mut group = c.benchmark_group("residual_sweep_100");
    for m in [0, 1, 6] {
        let field = ZeroModeField::designated(m).unwrap();
        group.bench_with_input(BenchmarkId::new("loss_yau", m), &field, |b, f| {
            b.iter(|| {
                points
                    .iter()
                    .map(|&x| loss_yau_residual(f, x, DEFAULT_STEP))
                    .sum::<f64>()
            })
        });
        group.bench_with_input(BenchmarkId::new("weyl_dirac", m), &field, |b, f| {
            b.iter(|| {
                points
                    .iter()
                    .map(|&x| weyl_dirac_residual(f, x, DEFAULT_STEP).unwrap())
                    .sum::<f64>()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, build, factorization, oracle, residual_sweep);
criterion_main!(benches);
