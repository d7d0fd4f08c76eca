//! Property bodies shared by the proptest suites and the acceptance runner.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use idealforge::config::{build_e8, DistributionMode, PointSet, SphericalConfiguration};
use idealforge::exact::{hnf_int, ExactMatrix, Field, FieldEchelon, IntEchelon, Scalar};
use idealforge::generators::{lattice_sliced_set, ComplementRule};
use idealforge::groebner::{
    affine_hilbert_by_evaluation, buchberger, normal_form, quotient_data, s_polynomial,
    GroebnerError,
};
use idealforge::poly::{Monomial, MonomialOrdering, OrderKind, SparsePoly};
use idealforge::suite::{run_verify, RunOptions};
use idealforge::verify::check_vanishing;

pub type Terms = Vec<(Vec<u32>, i64, i64)>;

pub fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::Quadratic(2)),
        Just(Field::Quadratic(3)),
        Just(Field::Quadratic(5))
    ]
}

pub fn scalar(a: i64, b: i64, f: Field) -> Scalar {
    match f {
        Field::Rational => Scalar::from_int(a, f),
        Field::Quadratic(d) => Scalar::quadratic(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
            d,
        )
        .unwrap(),
    }
}

pub fn terms_strategy(
    nvars: usize,
    max_deg: u32,
    max_terms: usize,
) -> impl Strategy<Value = Terms> {
    proptest::collection::vec(
        (
            proptest::collection::vec(0..=max_deg, nvars),
            -6i64..=6,
            -3i64..=3,
        ),
        0..=max_terms,
    )
}

pub fn poly(nvars: usize, f: Field, ordering: &MonomialOrdering, terms: &Terms) -> SparsePoly {
    let t = terms
        .iter()
        .map(|(e, a, b)| (Monomial::from_exponents(e.clone()), scalar(*a, *b, f)))
        .collect();
    SparsePoly::from_terms_ordered(nvars, f, ordering.clone(), t)
}

pub fn ordering_strategy(nvars: usize) -> impl Strategy<Value = MonomialOrdering> {
    (
        prop_oneof![Just(OrderKind::Grevlex), Just(OrderKind::Lex)],
        Just((0..nvars).collect::<Vec<_>>()).prop_shuffle(),
    )
        .prop_map(|(k, p)| MonomialOrdering::with_priority(k, p))
}

/// `f = sum q_i d_i + r` with no term of `r` divisible by a leading monomial.
pub fn division_identity(
    (f, ord, num, dens): (Field, MonomialOrdering, Terms, Vec<Terms>),
) -> Result<(), TestCaseError> {
    let n = ord.nvars();
    let p = poly(n, f, &ord, &num);
    let divisors: Vec<SparsePoly> = dens
        .iter()
        .map(|t| poly(n, f, &ord, t))
        .filter(|d| !d.is_zero())
        .collect();
    prop_assume!(!divisors.is_empty());
    let (qs, r) = p.divide(&divisors).unwrap();
    let mut acc = r.clone();
    for (q, d) in qs.iter().zip(&divisors) {
        acc = &acc + &(q * d);
    }
    prop_assert_eq!(acc, p);
    for (m, _) in r.terms() {
        prop_assert!(divisors
            .iter()
            .all(|d| !d.leading_monomial().unwrap().divides(m)));
    }
    Ok(())
}

pub fn division_strategy() -> impl Strategy<Value = (Field, MonomialOrdering, Terms, Vec<Terms>)> {
    (field_strategy(), 1usize..=3).prop_flat_map(|(f, n)| {
        (
            Just(f),
            ordering_strategy(n),
            terms_strategy(n, 4, 6),
            proptest::collection::vec(terms_strategy(n, 2, 3), 1..=3),
        )
    })
}

/// Evaluation is a ring homomorphism.
pub fn evaluation_homomorphism(
    (f, a, b, point): (Field, Terms, Terms, Vec<(i64, i64)>),
) -> Result<(), TestCaseError> {
    let n = point.len();
    let ord = MonomialOrdering::grevlex(n);
    let (p, q) = (poly(n, f, &ord, &a), poly(n, f, &ord, &b));
    let x: Vec<Scalar> = point.iter().map(|(u, v)| scalar(*u, *v, f)).collect();
    let (pv, qv) = (p.eval(&x).unwrap(), q.eval(&x).unwrap());
    prop_assert_eq!((&p + &q).eval(&x).unwrap(), &pv + &qv);
    prop_assert_eq!((&p * &q).eval(&x).unwrap(), &pv * &qv);
    prop_assert_eq!((-&p).eval(&x).unwrap(), -&pv);
    Ok(())
}

pub fn evaluation_strategy() -> impl Strategy<Value = (Field, Terms, Terms, Vec<(i64, i64)>)> {
    (field_strategy(), 1usize..=4).prop_flat_map(|(f, n)| {
        (
            Just(f),
            terms_strategy(n, 3, 5),
            terms_strategy(n, 3, 5),
            proptest::collection::vec((-4i64..=4, -2i64..=2), n),
        )
    })
}

/// Every S-polynomial of a computed basis reduces to zero modulo it.
pub fn s_polynomials_reduce(
    (f, ord, gens): (Field, MonomialOrdering, Vec<Terms>),
) -> Result<(), TestCaseError> {
    let n = ord.nvars();
    let polys: Vec<SparsePoly> = gens
        .iter()
        .map(|t| poly(n, f, &ord, t))
        .filter(|p| !p.is_zero())
        .collect();
    prop_assume!(!polys.is_empty());
    let gb = match buchberger(&polys, &ord, 20_000) {
        Ok(gb) => gb,
        Err(GroebnerError::Budget(_)) => return Err(TestCaseError::reject("budget")),
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    };
    for (i, g) in gb.polys.iter().enumerate() {
        prop_assert!(g.leading_coefficient().unwrap().is_one());
        for h in &gb.polys[i + 1..] {
            prop_assert!(normal_form(&s_polynomial(g, h), &gb.polys).is_zero());
        }
    }
    for p in &polys {
        prop_assert!(gb.contains(p));
    }
    Ok(())
}

pub fn s_polynomial_strategy() -> impl Strategy<Value = (Field, MonomialOrdering, Vec<Terms>)> {
    (
        prop_oneof![Just(Field::Rational), Just(Field::Quadratic(5))],
        1usize..=3,
    )
        .prop_flat_map(|(f, n)| {
            (
                Just(f),
                ordering_strategy(n),
                proptest::collection::vec(terms_strategy(n, 2, 3), 1..=3),
            )
        })
}

fn point_config(points: &[Vec<i64>]) -> SphericalConfiguration {
    let dim = points[0].len();
    let data = points.iter().flatten().copied().collect();
    let r2 = Scalar::from_int(points[0].iter().map(|v| v * v).sum(), Field::Rational);
    SphericalConfiguration::new(
        "points",
        PointSet::Integral { dim, den: 1, data },
        r2.clone(),
        vec![r2],
    )
}

/// Quotient Hilbert function of the vanishing ideal of a small point set,
/// from a Groebner basis of its evaluation kernel, against the ranks of the
/// evaluation matrices.
pub fn hilbert_oracle(points: Vec<Vec<i64>>) -> Result<(), TestCaseError> {
    let mut pts = points;
    pts.sort();
    pts.dedup();
    let n = pts[0].len();
    let x = point_config(&pts);
    let top = pts.len() as u32;
    let monos = Monomial::up_to_degree(n, top);
    let f = Field::Rational;
    let eval: Vec<Vec<Scalar>> = pts
        .iter()
        .map(|p| {
            monos
                .iter()
                .map(|m| {
                    Scalar::from_bigint(
                        m.exponents()
                            .iter()
                            .zip(p)
                            .map(|(&e, &v)| BigInt::from(v).pow(e))
                            .product(),
                        f,
                    )
                })
                .collect()
        })
        .collect();
    let kernel = ExactMatrix::from_rows(eval, f).unwrap().nullspace_basis();
    let ord = MonomialOrdering::grevlex(n);
    let gens: Vec<SparsePoly> = kernel
        .iter()
        .map(|v| {
            let t = monos
                .iter()
                .cloned()
                .zip(v.iter().cloned())
                .filter(|(_, c)| !c.is_zero())
                .collect();
            SparsePoly::from_terms_ordered(n, f, ord.clone(), t)
        })
        .collect();
    let gb = buchberger(&gens, &ord, 200_000).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let q = quotient_data(&gb).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(q.dimension, pts.len());
    let oracle = affine_hilbert_by_evaluation(&x, top).unwrap();
    for (k, h) in oracle.iter().enumerate() {
        prop_assert_eq!(q.affine_hilbert(k), *h, "degree {}", k);
    }
    Ok(())
}

pub fn hilbert_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=3).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), 1..=5)
    })
}

/// Same seed, same document; sampled passes repeat exactly.
pub fn deterministic_reports((seed, n): (u64, usize)) -> Result<(), TestCaseError> {
    let opts = RunOptions {
        seed,
        n: Some(n),
        ..RunOptions::default()
    };
    let a = run_verify("ngon", &opts).unwrap();
    let b = run_verify("ngon", &opts).unwrap();
    prop_assert_eq!(a.deterministic_json(), b.deterministic_json());
    let e8 = build_e8();
    let g = lattice_sliced_set(&e8, ComplementRule::FirstNonzero).unwrap();
    let mode = DistributionMode::Sampled { seed, count: 20 };
    let (u, v) = (
        check_vanishing(&e8, &g, mode),
        check_vanishing(&e8, &g, mode),
    );
    prop_assert_eq!(u.points_checked, v.points_checked);
    prop_assert!(u.passed() && v.passed());
    Ok(())
}

pub fn report_strategy() -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), prop_oneof![Just(4usize), Just(6), Just(8)])
}

fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect()
        })
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let q = &m[i][c] / &m[rank][c];
                let pivot = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Exact ranks from every elimination routine agree with a plain
/// Gauss-Jordan oracle.
pub fn rank_matches_oracle(rows: Vec<Vec<i64>>) -> Result<(), TestCaseError> {
    let want = rational_rank(&rows);
    let cols = rows[0].len();
    prop_assert_eq!(ExactMatrix::from_i64_rows(&rows).rank(), want);
    let mut ie = IntEchelon::new(cols);
    let mut fe = FieldEchelon::new(cols, Field::Quadratic(3));
    for r in &rows {
        ie.insert_i64(r);
        fe.insert(
            r.iter()
                .map(|&v| Scalar::from_int(v, Field::Quadratic(3)))
                .collect(),
        )
        .unwrap();
    }
    prop_assert_eq!(ie.rank(), want);
    prop_assert_eq!(fe.rank(), want);
    Ok(())
}

pub fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(
            proptest::collection::vec(prop_oneof![3 => Just(0i64), 5 => -4i64..=4], c),
            r,
        )
    })
}

/// `G = L D L^T` for a positive definite Gram matrix.
pub fn ldlt_reconstructs(rows: Vec<Vec<i64>>) -> Result<(), TestCaseError> {
    let n = rows[0].len();
    let a = ExactMatrix::from_i64_rows(&rows);
    let gram = a.transpose().mul(&a).unwrap();
    let mut g = gram.clone();
    for i in 0..n {
        let v = g.get(i, i) + &Scalar::one(Field::Rational);
        g.set(i, i, v);
    }
    let (l, d) = g.ldlt().unwrap();
    let mut dm = ExactMatrix::zeros(n, n, Field::Rational);
    for (i, v) in d.iter().enumerate() {
        prop_assert!(v.is_positive());
        dm.set(i, i, v.clone());
    }
    for i in 0..n {
        prop_assert!(l.get(i, i).is_one());
        for j in i + 1..n {
            prop_assert!(l.get(i, j).is_zero());
        }
    }
    let back = l.mul(&dm).unwrap().mul(&l.transpose()).unwrap();
    prop_assert_eq!(back.to_rows(), g.to_rows());
    Ok(())
}

/// Hermite normal form shape, uniqueness under row permutation, and that
/// every input row lies in the lattice of the output rows.
pub fn hnf_properties((rows, perm_seed): (Vec<Vec<i64>>, u64)) -> Result<(), TestCaseError> {
    let cols = rows[0].len();
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let h = hnf_int(big.clone(), cols);
    prop_assert_eq!(h.len(), rational_rank(&rows));
    let pivots: Vec<usize> = h
        .iter()
        .map(|r| r.iter().position(|v| !v.is_zero()).unwrap())
        .collect();
    for (k, (&p, row)) in pivots.iter().zip(&h).enumerate() {
        prop_assert!(row[p].is_positive());
        prop_assert!(k == 0 || pivots[k - 1] < p);
        for above in &h[..k] {
            prop_assert!(!above[p].is_negative() && above[p] < row[p]);
        }
    }
    for r in &big {
        let mut v = r.clone();
        for (&p, row) in pivots.iter().zip(&h) {
            let (q, rem) = (&v[p] / &row[p], &v[p] % &row[p]);
            prop_assert!(rem.is_zero());
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        prop_assert!(v.iter().all(Zero::is_zero));
    }
    let mut shuffled = big;
    let len = shuffled.len();
    if len > 1 {
        shuffled.rotate_left((perm_seed as usize) % len);
        shuffled.swap(0, len - 1);
    }
    prop_assert_eq!(hnf_int(shuffled, cols), h.clone());
    prop_assert_eq!(hnf_int(h.clone(), cols), h);
    Ok(())
}

pub fn hnf_strategy() -> impl Strategy<Value = (Vec<Vec<i64>>, u64)> {
    (matrix_strategy(), any::<u64>())
}

/// The field norm is multiplicative and `x * conj(x) = N(x)`.
pub fn quadratic_norm((d, a, b, c, e): (u32, i64, i64, i64, i64)) -> Result<(), TestCaseError> {
    let f = Field::Quadratic(d);
    let (x, y) = (scalar(a, b, f), scalar(c, e, f));
    prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    prop_assert_eq!(&x * &x.conjugate(), Scalar::from_rational(x.norm(), f));
    if !x.is_zero() {
        prop_assert!(!x.norm().is_zero());
        prop_assert!((&x * &x.inverse().unwrap()).is_one());
    }
    prop_assert_eq!(
        x.norm(),
        BigRational::from_integer((a * a - i64::from(d) * b * b).into())
    );
    Ok(())
}

pub fn norm_strategy() -> impl Strategy<Value = (u32, i64, i64, i64, i64)> {
    (
        prop_oneof![Just(2u32), Just(3), Just(5)],
        -50i64..=50,
        -50i64..=50,
        -50i64..=50,
        -50i64..=50,
    )
}

/// Monomial orderings are total, multiplicative and well-founded at 1;
/// grevlex refines degree.
pub fn ordering_laws(
    (ord, a, b, c): (MonomialOrdering, Vec<u32>, Vec<u32>, Vec<u32>),
) -> Result<(), TestCaseError> {
    use std::cmp::Ordering::*;
    let (a, b, c) = (
        Monomial::from_exponents(a),
        Monomial::from_exponents(b),
        Monomial::from_exponents(c),
    );
    let one = Monomial::one(ord.nvars());
    prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&b, &a).reverse());
    prop_assert_eq!(ord.cmp(&a, &b) == Equal, a == b);
    prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&a.mul(&c), &b.mul(&c)));
    prop_assert!(ord.cmp(&one, &a) != Greater);
    if ord.kind() == OrderKind::Grevlex && a.degree() != b.degree() {
        prop_assert_eq!(ord.cmp(&a, &b), a.degree().cmp(&b.degree()));
    }
    if ord.cmp(&a, &b) == Less && ord.cmp(&b, &c) == Less {
        prop_assert_eq!(ord.cmp(&a, &c), Less);
    }
    Ok(())
}

pub fn ordering_law_strategy(
) -> impl Strategy<Value = (MonomialOrdering, Vec<u32>, Vec<u32>, Vec<u32>)> {
    (1usize..=4).prop_flat_map(|n| {
        let e = || proptest::collection::vec(0u32..=4, n);
        (ordering_strategy(n), e(), e(), e())
    })
}

/// Leibniz rule for the formal partial derivatives.
pub fn product_rule((f, a, b, var): (Field, Terms, Terms, usize)) -> Result<(), TestCaseError> {
    let n = 3;
    let ord = MonomialOrdering::grevlex(n);
    let (p, q) = (poly(n, f, &ord, &a), poly(n, f, &ord, &b));
    let i = var % n;
    let lhs = (&p * &q).partial_derivative(i).unwrap();
    let rhs = &(&p.partial_derivative(i).unwrap() * &q) + &(&p * &q.partial_derivative(i).unwrap());
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn product_rule_strategy() -> impl Strategy<Value = (Field, Terms, Terms, usize)> {
    (
        field_strategy(),
        terms_strategy(3, 3, 5),
        terms_strategy(3, 3, 5),
        0usize..3,
    )
}

/// At a zero, the closed-form gradient of a sliced zonal generator equals
/// the formal one.
pub fn closed_form_gradient(
    (point, rep, index): (usize, usize, usize),
) -> Result<(), TestCaseError> {
    let e8 = build_e8();
    let g = lattice_sliced_set(&e8, ComplementRule::FirstNonzero).unwrap();
    let k = 1 + (rep * 7 + index % 7) % (g.len() - 1);
    let gen = g.get(k);
    let x = e8.points.point(point % e8.len());
    prop_assert_eq!(
        gen.gradient_closed_form(&x).unwrap(),
        gen.gradient_symbolic(&x)
    );
    Ok(())
}

pub fn gradient_strategy() -> impl Strategy<Value = (usize, usize, usize)> {
    (0usize..240, 0usize..120, 0usize..7)
}
