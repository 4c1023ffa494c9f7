//! Hot-path benchmarks: one full classification, the exact-arithmetic
//! workhorses behind it, and a short simulator run.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use toralclass_bench::{companion, kernel_rows, scrambler};
use toralclass_core::{
    classify, decide_conjugacy, eigen_data, entropy, factor_monic_quartic, hermite_normal_form,
    saturated_integer_kernel, solve_invariant_form, weyl_sum, ClassifyConfig, IntPolynomial,
    SimConfig,
};

fn bench_classify(c: &mut Criterion) {
    let a = companion(-3, 3);
    let cfg = ClassifyConfig::default();
    c.bench_function("classify_full_report", |b| {
        b.iter(|| classify(black_box(&a), &cfg).unwrap())
    });
}

fn bench_form_search(c: &mut Criterion) {
    let a = companion(-3, 3);
    c.bench_function("invariant_form_search", |b| {
        b.iter(|| solve_invariant_form(black_box(&a)).unwrap())
    });
}

fn bench_factor(c: &mut Criterion) {
    let polys: Vec<IntPolynomial> = (-10i64..=10)
        .map(|t| IntPolynomial::from_i64(&[1, t, 3, t, 1]))
        .collect();
    c.bench_function("quartic_factor_21", |b| {
        b.iter(|| {
            for p in &polys {
                black_box(factor_monic_quartic(black_box(p)).unwrap());
            }
        })
    });
}

fn bench_hnf(c: &mut Criterion) {
    let rows = kernel_rows();
    c.bench_function("hermite_normal_form", |b| {
        b.iter(|| hermite_normal_form(black_box(&rows)))
    });
    c.bench_function("saturated_kernel", |b| {
        b.iter(|| saturated_integer_kernel(black_box(&rows), 4))
    });
}

fn bench_witness_search(c: &mut Criterion) {
    let a = companion(-3, 3);
    let u = scrambler();
    let conj = u.mul(&a).mul(&u.unimodular_inverse().unwrap());
    c.bench_function("conjugacy_witness", |b| {
        b.iter(|| decide_conjugacy(black_box(&a), black_box(&conj), 10).unwrap())
    });
}

fn bench_entropy(c: &mut Criterion) {
    let a = companion(-7, 13);
    c.bench_function("entropy_50_digits", |b| {
        b.iter(|| entropy(black_box(&a), 50).unwrap())
    });
}

fn bench_weyl(c: &mut Criterion) {
    let ed = eigen_data(&companion(-3, 3), 50).unwrap();
    let cfg = SimConfig {
        samples: 4096,
        ..SimConfig::default()
    };
    c.bench_function("weyl_sum_4096", |b| {
        b.iter(|| weyl_sum(black_box(&ed), &cfg, black_box([1, 0, 0, 0])).unwrap())
    });
}

criterion_group!(
    benches,
    bench_classify,
    bench_form_search,
    bench_factor,
    bench_hnf,
    bench_witness_search,
    bench_entropy,
    bench_weyl
);
criterion_main!(benches);
