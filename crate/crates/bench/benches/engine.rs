use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rrp_core::{is_square_pi_r, maillet_h_minus, scan_q, GaloisRing, RealCyclotomicField};

fn class_numbers(c: &mut Criterion) {
    c.bench_function("maillet h- r=101", |b| b.iter(|| maillet_h_minus(black_box(101)).unwrap()));
}

fn field_ops(c: &mut Criterion) {
    let k = RealCyclotomicField::new(61).unwrap();
    let a = k.pi_r();
    c.bench_function("norm of theta-2, r=61", |b| b.iter(|| k.norm(black_box(&a))));
    c.bench_function("build field r=149", |b| b.iter(|| RealCyclotomicField::new(black_box(149)).unwrap()));
}

fn local_squares(c: &mut Criterion) {
    let k = RealCyclotomicField::new(83).unwrap();
    c.bench_function("theta-2 square test r=83", |b| b.iter(|| is_square_pi_r(black_box(&k), 5).unwrap()));
    let ring = GaloisRing::standard(20, 8).unwrap();
    let u = ring.elem(&[9, 4, 0, 2, 0, 0, 6, 8]);
    c.bench_function("GR(2^20, 8) sqrt", |b| b.iter(|| ring.sqrt(black_box(&u)).unwrap()));
}

fn scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("scan");
    g.sample_size(10);
    g.bench_function("scan r <= 150", |b| b.iter(|| scan_q(black_box(150)).unwrap()));
    g.finish();
}

criterion_group!(benches, class_numbers, field_ops, local_squares, scan);
criterion_main!(benches);
