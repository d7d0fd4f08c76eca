use std::time::Instant;

use idealforge::generators::{build_generator_set, explicit_sliced_set, ComplementRule};
use idealforge::groebner::{
    affine_hilbert_by_evaluation, buchberger, certify_full, quotient_data, DEFAULT_BUDGET,
};
use idealforge::poly::{MonomialOrdering, OrderKind, SparsePoly};

fn certify(name: &str, n: Option<usize>) -> (bool, Option<usize>, Option<Vec<usize>>) {
    let b = build_generator_set(name, n).unwrap();
    let t = Instant::now();
    let ord = MonomialOrdering::grevlex(b.generators.nvars);
    let (cert, gb) = certify_full(&b.config, &b.generators, &ord, DEFAULT_BUDGET).unwrap();
    eprintln!(
        "{name} {n:?}: {:?} in {:?} ({} steps)",
        cert.quotient_dimension,
        t.elapsed(),
        gb.steps
    );
    assert!(gb.is_groebner());
    (cert.is_full(), cert.quotient_dimension, cert.hilbert)
}

#[test]
fn icosahedron_full() {
    let (full, q, _) = certify("icosahedron", None);
    assert!(full);
    assert_eq!(q, Some(12));
}

#[test]
fn knn_full_with_hilbert_function() {
    for n in [2usize, 3, 4] {
        let (full, q, h) = certify("knn", Some(n));
        assert!(full);
        assert_eq!(q, Some(2 * n));
        assert_eq!(h, Some(vec![1, 2 * n - 1, 2 * n]));
    }
}

#[test]
fn ngon_full() {
    for n in [4usize, 6] {
        let (full, q, _) = certify("ngon", Some(n));
        assert!(full);
        assert_eq!(q, Some(n));
    }
}

#[test]
fn cube_zonal_ideal_is_not_the_vanishing_ideal() {
    let (full, q, _) = certify("cube4", None);
    assert!(!full);
    assert!(q.unwrap() > 16);
}

#[test]
fn complement_choice_does_not_change_the_ideal() {
    let b = build_generator_set("icosahedron", None).unwrap();
    let other = explicit_sliced_set(&b.config, ComplementRule::LastNonzero).unwrap();
    let ord = MonomialOrdering::grevlex(3);
    let polys = |g: &idealforge::generators::GeneratorSet| {
        g.iter().map(|x| x.to_poly()).collect::<Vec<SparsePoly>>()
    };
    let a = buchberger(&polys(&b.generators), &ord, DEFAULT_BUDGET).unwrap();
    let c = buchberger(&polys(&other), &ord, DEFAULT_BUDGET).unwrap();
    assert_eq!(a.polys, c.polys);
}

#[test]
fn lex_and_grevlex_agree_on_quotient_dimension() {
    for (name, n) in [("icosahedron", None), ("knn", Some(2))] {
        let b = build_generator_set(name, n).unwrap();
        let polys: Vec<SparsePoly> = b.generators.iter().map(|x| x.to_poly()).collect();
        let m = b.generators.nvars;
        let g = quotient_data(
            &buchberger(&polys, &MonomialOrdering::grevlex(m), DEFAULT_BUDGET).unwrap(),
        )
        .unwrap();
        let l = quotient_data(
            &buchberger(
                &polys,
                &MonomialOrdering::new(OrderKind::Lex, m),
                DEFAULT_BUDGET,
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(g.dimension, l.dimension);
    }
}

#[test]
fn hilbert_function_matches_evaluation_ranks() {
    for (name, n) in [("icosahedron", None), ("knn", Some(3)), ("ngon", Some(6))] {
        let b = build_generator_set(name, n).unwrap();
        let m = b.generators.nvars;
        let polys: Vec<SparsePoly> = b.generators.iter().map(|x| x.to_poly()).collect();
        let q = quotient_data(
            &buchberger(&polys, &MonomialOrdering::grevlex(m), DEFAULT_BUDGET).unwrap(),
        )
        .unwrap();
        let kmax = q.by_degree.len() as u32 + 1;
        let ev = affine_hilbert_by_evaluation(&b.config, kmax).unwrap();
        for (k, h) in ev.iter().enumerate() {
            assert_eq!(*h, q.affine_hilbert(k), "{name} k={k}");
        }
    }
}
