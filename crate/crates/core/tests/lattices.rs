use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use idealforge::config::{
    basis_from_generators, build_e8, build_leech, enumerate_short_vectors, leech_type,
    pair_distribution, DistributionMode,
};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn e8_basis_enumeration_and_unimodularity() {
    let e8 = build_e8();
    let b = basis_from_generators(&e8, 4).unwrap();
    assert_eq!(
        b.det().magnitude(),
        &BigInt::from(256u32).magnitude().clone()
    );
    assert!(b.is_unimodular());
    let r = enumerate_short_vectors(&b, &q(2), true).unwrap();
    assert_eq!(r.count, 240);
    let found: HashSet<Vec<i64>> = r.vectors.unwrap().into_iter().collect();
    let built: HashSet<Vec<i64>> = (0..240)
        .map(|i| e8.points.integral_row(i).unwrap().to_vec())
        .collect();
    assert_eq!(found, built);
    assert_eq!(enumerate_short_vectors(&b, &q(0), false).unwrap().count, 0);
}

#[test]
fn e8_distance_invariance() {
    let d = pair_distribution(&build_e8(), DistributionMode::Full);
    assert!(d.invariant && d.closed());
    assert_eq!(d.histograms[0], vec![1, 56, 126, 56, 1]);
}

#[test]
fn leech_end_to_end() {
    let t = std::time::Instant::now();
    let lb = build_leech().unwrap();
    eprintln!("build {:?}", t.elapsed());
    let x = &lb.config;
    assert_eq!(x.len(), 196560);
    assert_eq!(lb.type_counts, [97152, 98304, 1104]);
    assert!(!lb.flipped);
    assert_eq!(leech_type(x.points.integral_row(196559).unwrap()), 3);
    let d = pair_distribution(
        x,
        DistributionMode::Sampled {
            seed: 0xC0DE,
            count: 64,
        },
    );
    assert!(d.invariant && d.closed());
    assert_eq!(d.histograms[0].iter().sum::<u64>(), 196560);
    eprintln!("dist {:?}", t.elapsed());
    let b = basis_from_generators(x, 8).unwrap();
    eprintln!("hnf {:?}", t.elapsed());
    assert_eq!(b.gram_det(), BigInt::from(8).pow(24));
    assert!(b.is_unimodular());
    let r = enumerate_short_vectors(&b, &q(32), true).unwrap();
    eprintln!("enum {:?} nodes {}", t.elapsed(), r.nodes);
    assert_eq!(r.count, 196560);
    let found: HashSet<Vec<i64>> = r.vectors.unwrap().into_iter().collect();
    assert!((0..x.len()).all(|i| found.contains(x.points.integral_row(i).unwrap())));
}
