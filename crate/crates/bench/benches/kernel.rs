//! Criterion benchmarks for the hot paths: tensor-operator composition in
//! the Yang-Baxter check, quotient construction (row reduction), and normal
//! forms against a built ideal.

use criterion::{criterion_group, criterion_main, Criterion};
use rttk_core::ncalg::symbol::{Family, GenSymbol};
use rttk_core::qloop::rtt6_instance;
use rttk_core::rmatrix::verify_qybe_rational;
use rttk_core::superlinalg::SuperSpace;
use rttk_core::yangian::{build_yangian, HbarMode};

fn bench_qybe(c: &mut Criterion) {
    let s11 = SuperSpace::new(1, 1);
    let s21 = SuperSpace::new(2, 1);
    c.bench_function("qybe rational (1|1)", |b| {
        b.iter(|| verify_qybe_rational(std::hint::black_box(s11)).unwrap())
    });
    c.bench_function("qybe rational (2|1)", |b| {
        b.iter(|| verify_qybe_rational(std::hint::black_box(s21)).unwrap())
    });
}

fn bench_quotient_build(c: &mut Criterion) {
    let space = SuperSpace::new(1, 1);
    c.bench_function("yangian build (1|1) level 2 word 2", |b| {
        b.iter(|| build_yangian(std::hint::black_box(space), 2, 2, HbarMode::Unit).unwrap())
    });
}

fn bench_normal_form(c: &mut Criterion) {
    let space = SuperSpace::new(1, 1);
    let mut alg = build_yangian(space, 2, 2, HbarMode::Unit).unwrap();
    let x = GenSymbol::new(Family::Ty, 2, 2, 1, 1);
    let y = GenSymbol::new(Family::Ty, 1, 1, 2, 1);
    let p = rttk_core::ncalg::poly::NCPoly::gen(x).mul(&rttk_core::ncalg::poly::NCPoly::gen(y));
    c.bench_function("yangian normal form, out-of-order pair", |b| {
        b.iter(|| alg.quotient.normal_form(std::hint::black_box(&p)).unwrap())
    });
    let mut qalg = rttk_core::qloop::build_qloop(space, 1, 2).unwrap();
    let inst = rtt6_instance(&space, 1, 2, 2, 1, 0, 0);
    c.bench_function("qloop ideal membership, quoted instance", |b| {
        b.iter(|| {
            qalg.quotient
                .is_zero_mod_ideal(std::hint::black_box(&inst))
                .unwrap()
        })
    });
}

criterion_group!(benches, bench_qybe, bench_quotient_build, bench_normal_form);
criterion_main!(benches);
