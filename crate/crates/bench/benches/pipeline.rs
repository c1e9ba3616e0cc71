//! Benchmarks for the hot paths: bijection table construction, matching
//! enumeration, symbolic expansion, and modular certification.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use monobij::linalg::{det_mod_p, symbolic_det, verify_conjecture};
use monobij::fp::DEFAULT_PRIME;
use monobij::verify::{
    check_noncancellation, divisible_bijection_census, phi_table, DEFAULT_NODE_CAP,
};

fn bench_phi_tables(c: &mut Criterion) {
    c.bench_function("phi_table m=7 all w", |b| {
        b.iter(|| {
            for w in 0..=33 {
                black_box(phi_table(7, w).unwrap());
            }
        })
    });
}

fn bench_matching_oracle(c: &mut Criterion) {
    c.bench_function("noncancellation m=4 w=14", |b| {
        b.iter(|| black_box(check_noncancellation(4, 14, DEFAULT_NODE_CAP).unwrap()))
    });
    c.bench_function("divisible census m=4 w=14", |b| {
        b.iter(|| black_box(divisible_bijection_census(4, 14, DEFAULT_NODE_CAP).unwrap()))
    });
}

fn bench_determinants(c: &mut Criterion) {
    c.bench_function("symbolic det m=4 w=14", |b| {
        b.iter(|| black_box(symbolic_det(4, 14, 8).unwrap()))
    });
    c.bench_function("det mod p m=9 w=22", |b| {
        b.iter(|| black_box(det_mod_p(9, 22, DEFAULT_PRIME, 1, true).unwrap()))
    });
    c.bench_function("conjecture sweep m=6", |b| {
        b.iter(|| black_box(verify_conjecture(6, DEFAULT_PRIME, 1).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_phi_tables,
    bench_matching_oracle,
    bench_determinants
);
criterion_main!(benches);
