use criterion::{black_box, criterion_group, criterion_main, Criterion};

use paraclose_bench::{quadric_f2, roberts_ideal, roberts_ring, roberts_target};
use paraclose_core::closure::regular_certificate;
use paraclose_core::forcing::paraclass_vanishes;
use paraclose_core::groebner::{buchberger, colon_ideal, membership_with_certificate};
use paraclose_core::poly::MonomialOrder;

fn bench_buchberger_with_cofactors(c: &mut Criterion) {
    let ring = roberts_ring();
    let ideal = roberts_ideal(&ring);
    c.bench_function("buchberger roberts grevlex", |b| {
        b.iter(|| buchberger(black_box(&ideal), MonomialOrder::GrevLex))
    });
}

fn bench_membership(c: &mut Criterion) {
    let ring = roberts_ring();
    let ideal = roberts_ideal(&ring);
    let h = roberts_target(&ring);
    c.bench_function("membership roberts", |b| {
        b.iter(|| membership_with_certificate(black_box(&h), black_box(&ideal)).unwrap())
    });
}

fn bench_colon(c: &mut Criterion) {
    let ring = roberts_ring();
    let ideal = roberts_ideal(&ring);
    let f = roberts_target(&ring);
    c.bench_function("colon (x^3,y^3,z^3) : (xyz)^2", |b| {
        b.iter(|| colon_ideal(black_box(&ideal), black_box(&f)).unwrap())
    });
}

fn bench_regular_certificate(c: &mut Criterion) {
    let ring = roberts_ring();
    let ideal = roberts_ideal(&ring);
    let h = roberts_target(&ring);
    c.bench_function("regular certificate roberts", |b| {
        b.iter(|| regular_certificate(black_box(&ideal), black_box(&h)).unwrap())
    });
}

fn bench_negative_search_f2(c: &mut Criterion) {
    let (a, params) = quadric_f2();
    c.bench_function("paraclass search quadric F2 k<=4", |b| {
        b.iter(|| paraclass_vanishes(black_box(&a), black_box(&params), 4).unwrap())
    });
}

criterion_group!(
    benches,
    bench_buchberger_with_cofactors,
    bench_membership,
    bench_colon,
    bench_regular_certificate,
    bench_negative_search_f2,
);
criterion_main!(benches);
