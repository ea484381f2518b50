//! Arithmetic kernel benchmarks: sparse Laurent multiplication, factored
//! expansion with exact division, infinite-product truncation and
//! cyclotomic field operations.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use qsum_core::cyclo::{omega_pow, CycloContext};
use qsum_core::laurent::LaurentPoly;
use qsum_core::qfactored::poch_qpow;
use qsum_core::ring::int;
use qsum_core::series::inf_poch;

fn laurent_mul(c: &mut Criterion) {
    // (q;q)_30 squared: dense-ish integer polynomials
    let p = poch_qpow(1, 30).expand().unwrap();
    c.bench_function("laurent_mul_qq30_sq", |b| {
        b.iter(|| black_box(&p) * black_box(&p))
    });
}

fn gaussian_expand(c: &mut Criterion) {
    // [40 choose 20]_q through verified exact division
    let g = poch_qpow(1, 40)
        .div(&poch_qpow(1, 20))
        .div(&poch_qpow(1, 20));
    c.bench_function("gaussian_binomial_40_20", |b| {
        b.iter(|| black_box(&g).expand().unwrap())
    });
}

fn euler_product(c: &mut Criterion) {
    let ctx = CycloContext::new(1);
    c.bench_function("inf_poch_T256", |b| {
        b.iter(|| inf_poch(black_box(&ctx), 0, 1, 256).unwrap())
    });
}

fn cyclo_mul(c: &mut Criterion) {
    let ctx = CycloContext::new(12);
    let a = omega_pow(&ctx, 1).add(&omega_pow(&ctx, 5));
    let b2 = omega_pow(&ctx, 7).sub(&omega_pow(&ctx, 11));
    c.bench_function("cyclo_mul_n12", |b| {
        b.iter(|| black_box(&a).mul(black_box(&b2)))
    });
    c.bench_function("cyclo_inv_n12", |b| b.iter(|| black_box(&a).inv().unwrap()));
}

fn div_exact(c: &mut Criterion) {
    let p = poch_qpow(1, 24).expand().unwrap();
    let big = &p * &LaurentPoly::from_terms([(0, int(1)), (1, int(-1))]);
    c.bench_function("div_exact_one_minus_q", |b| {
        b.iter(|| black_box(&big).div_exact_one_minus(1).unwrap())
    });
}

criterion_group!(
    kernels,
    laurent_mul,
    gaussian_expand,
    euler_product,
    cyclo_mul,
    div_exact
);
criterion_main!(kernels);
