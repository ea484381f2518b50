//! End-to-end verifier benchmarks at representative desk-scale parameters.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use qsum_core::identities::{verify_conjecture, verify_theorem, ConjectureParams, TheoremParams};
use qsum_core::proofsteps::{verify_eq5, verify_eq7};

fn theorem(c: &mut Criterion) {
    let p = TheoremParams::new(3, 4, 4, 1).unwrap();
    c.bench_function("verify_theorem_3_4_4", |b| {
        b.iter(|| verify_theorem(black_box(&p)))
    });
}

fn conjecture(c: &mut Criterion) {
    let p = ConjectureParams::new(2, 3, 3, 3, 1, -1).unwrap();
    c.bench_function("verify_conjecture_2x3", |b| {
        b.iter(|| verify_conjecture(black_box(&p)))
    });
}

fn chain_steps(c: &mut Criterion) {
    c.bench_function("verify_eq5_3_3_3", |b| {
        b.iter(|| verify_eq5(black_box(3), 3, 3).unwrap())
    });
    c.bench_function("verify_eq7_3_3_3", |b| {
        b.iter(|| verify_eq7(black_box(3), 3, 3).unwrap())
    });
}

criterion_group!(verifiers, theorem, conjecture, chain_steps);
criterion_main!(verifiers);
