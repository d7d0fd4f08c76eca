use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;
use num_rational::BigRational;

use idealforge::config::{
    basis_from_generators, build_e8, enumerate_short_vectors, DistributionMode,
};
use idealforge::gamma::gamma1_exact;
use idealforge::generators::build_generator_set;
use idealforge::groebner::{certify_full, DEFAULT_BUDGET};
use idealforge::poly::MonomialOrdering;
use idealforge::verify::{check_vanishing, design_strength_gegenbauer, jacobian_rank_pass};

fn lattice(c: &mut Criterion) {
    let e8 = build_e8();
    let basis = basis_from_generators(&e8, 4).unwrap();
    let bound = BigRational::from_integer(BigInt::from(2));
    c.bench_function("e8_enumeration", |b| {
        b.iter(|| {
            enumerate_short_vectors(&basis, &bound, false)
                .unwrap()
                .count
        })
    });
    c.bench_function("e8_basis", |b| {
        b.iter(|| basis_from_generators(&e8, 4).unwrap())
    });
}

fn checks(c: &mut Criterion) {
    let e8 = build_generator_set("e8", None).unwrap();
    c.bench_function("e8_vanishing", |b| {
        b.iter(|| check_vanishing(&e8.config, &e8.generators, DistributionMode::Full).passed())
    });
    c.bench_function("e8_jacobian", |b| {
        b.iter(|| {
            jacobian_rank_pass(&e8.config, &e8.generators, DistributionMode::Full)
                .unwrap()
                .min_rank
        })
    });
    c.bench_function("e8_design", |b| {
        b.iter(|| {
            design_strength_gegenbauer(&e8.config, 8, DistributionMode::Full)
                .unwrap()
                .first_failure
        })
    });
}

fn algebra(c: &mut Criterion) {
    let mut group = c.benchmark_group("algebra");
    group.sample_size(10);
    let e8 = build_e8();
    group.bench_function("e8_gamma1", |b| {
        b.iter(|| gamma1_exact(&e8, 4).unwrap().value)
    });
    let ico = build_generator_set("icosahedron", None).unwrap();
    let ord = MonomialOrdering::grevlex(3);
    group.bench_function("icosahedron_groebner", |b| {
        b.iter(|| {
            certify_full(&ico.config, &ico.generators, &ord, DEFAULT_BUDGET)
                .unwrap()
                .0
                .quotient_dimension
        })
    });
    group.finish();
}

criterion_group!(benches, lattice, checks, algebra);
criterion_main!(benches);
