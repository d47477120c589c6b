use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use filippov_bench::{nonsimple, simple};
use filippov_core::{check_d_squared, classify_map, is_nijenhuis};

fn identities(c: &mut Criterion) {
    let s = simple();
    let ns = nonsimple();
    c.bench_function("filippov/dim4_simple", |b| {
        b.iter(|| black_box(&s.algebra).check_filippov())
    });
    c.bench_function("filippov/dim4_nonsimple", |b| {
        b.iter(|| black_box(&ns.algebra).check_filippov())
    });
    c.bench_function("derivation_space/dim4_simple", |b| {
        b.iter(|| black_box(&s.algebra).derivation_space())
    });
}

fn operators(c: &mut Criterion) {
    let s = simple();
    c.bench_function("nijenhuis/derivation", |b| {
        b.iter(|| is_nijenhuis(black_box(&s.algebra), black_box(&s.derivation)).unwrap())
    });
    c.bench_function("nijenhuis/dense", |b| {
        b.iter(|| is_nijenhuis(black_box(&s.algebra), black_box(&s.dense)).unwrap())
    });
    c.bench_function("classify/derivation", |b| {
        b.iter(|| classify_map(black_box(&s.algebra), black_box(&s.derivation)).unwrap())
    });
}

fn cohomology(c: &mut Criterion) {
    let s = simple();
    for p in 1..=2 {
        c.bench_function(&format!("d_squared/adjoint/p{p}"), |b| {
            b.iter(|| check_d_squared(black_box(&s.algebra), black_box(&s.adjoint), p).unwrap())
        });
    }
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = identities, operators, cohomology
}
criterion_main!(benches);
