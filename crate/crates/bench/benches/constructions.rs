use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use uob_bench::{spec, spectral_specs};
use uob_core::basis::{abelian_basis, full_matrix_super_basis, weyl_basis};
use uob_core::expectation::mixed_unitary_channel;
use uob_core::jones::basic_construction_basis;
use uob_core::verify::{run_all, Tolerances};
use uob_core::{
    check_spectral_condition, construct, BasicConstruction, BlockOperator, ConditionalExpectation, Expectation, Method,
    TracialState,
};

fn spectral(c: &mut Criterion) {
    let specs = spectral_specs();
    c.bench_function("spectral/catalog", |b| {
        b.iter(|| {
            for (_, s) in &specs {
                black_box(check_spectral_condition(s).unwrap());
            }
        })
    });
}

fn bases(c: &mut Criterion) {
    let mut g = c.benchmark_group("basis");
    let c_in_m5 = spec("c_in_m5");
    let c2_in_m2_m4 = spec("c2_in_m2_m4");
    let c_m2_in_m5 = spec("c_m2_in_m5");
    g.bench_function("abelian/c_in_m5", |b| {
        b.iter(|| abelian_basis(black_box(&c_in_m5)).unwrap())
    });
    g.bench_function("abelian/c2_in_m2_m4", |b| {
        b.iter(|| abelian_basis(black_box(&c2_in_m2_m4)).unwrap())
    });
    g.bench_function("weyl/c_in_m5", |b| b.iter(|| weyl_basis(black_box(&c_in_m5)).unwrap()));
    g.bench_function("full_matrix_super/c_m2_in_m5", |b| {
        b.iter(|| full_matrix_super_basis(black_box(&c_m2_in_m5)).unwrap())
    });
    g.finish();
}

fn expectation(c: &mut Criterion) {
    let s = spec("c3_cyclic");
    let phi = TracialState::standard(s.super_algebra());
    let e = ConditionalExpectation::new(&s, phi.clone()).unwrap();
    let ch = mixed_unitary_channel(&s, &phi).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let x = BlockOperator::random(&s.super_algebra(), &mut rng);
    let mut g = c.benchmark_group("expectation/c3_cyclic");
    g.bench_function("two_step", |b| b.iter(|| e.apply(black_box(&x))));
    g.bench_function("mixed_unitary", |b| b.iter(|| ch.apply(black_box(&x)).unwrap()));
    g.finish();
}

fn tower(c: &mut Criterion) {
    let s = spec("c2_in_m2_m4");
    let base = construct(&s, Method::Auto).unwrap();
    let mut g = c.benchmark_group("tower/c2_in_m2_m4");
    g.sample_size(20);
    g.bench_function("build", |b| b.iter(|| BasicConstruction::build(black_box(&s)).unwrap()));
    let bc = BasicConstruction::build(&s).unwrap();
    g.bench_function("basis", |b| {
        b.iter(|| basic_construction_basis(&bc, black_box(&base)).unwrap())
    });
    g.finish();
}

fn verification(c: &mut Criterion) {
    let s = spec("c_in_m5");
    let b5 = construct(&s, Method::Auto).unwrap();
    let e = ConditionalExpectation::markov(&s).unwrap();
    let tol = Tolerances::default();
    c.bench_function("verify/c_in_m5", |b| {
        b.iter(|| run_all(black_box(&b5), &e, &tol, 1, 10))
    });
}

criterion_group!(benches, spectral, bases, expectation, tower, verification);
criterion_main!(benches);
