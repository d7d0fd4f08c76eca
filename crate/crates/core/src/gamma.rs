//! The parameters `gamma_1` (least degree of a non-trivial member of the
//! vanishing ideal) and `gamma_2` (least possible top degree of a
//! generating set): exact values from evaluation matrices, bound ladders,
//! and the dimension `R_k(1)` of degree-`k` functions on the sphere.

use std::collections::HashMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::config::{PointSet, SphericalConfiguration};
use crate::exact::{ExactError, FieldEchelon, IntEchelon, Scalar};
use crate::generators::{GeneratorBody, GeneratorSet};
use crate::poly::{sphere_polynomial, Monomial, PolyError, SparsePoly};
use crate::verify::CertificateLevel;

/// Largest evaluation matrix (points times monomials) built exactly.
pub const EVALUATION_GUARD: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GammaError {
    #[error("feasibility guard exceeded: {0}")]
    Guard(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `binom(m+k-1, m-1) + binom(m+k-2, m-1)`: the dimension of polynomial
/// functions of degree at most `k` on the sphere in `R^m`.
pub fn rk1(m: usize, k: u32) -> BigUint {
    let m = m as u64;
    let k = u64::from(k);
    if k == 0 {
        return BigUint::from(1u32);
    }
    binomial(m + k - 1, m - 1) + binomial(m + k - 2, m - 1)
}

/// Least `k` with `R_k(1) > n`.
pub fn rk1_threshold(m: usize, n: usize) -> u32 {
    let n = BigUint::from(n);
    (0..)
        .find(|&k| rk1(m, k) > n)
        .expect("R_k(1) is unbounded for m >= 2")
}

/// Ranks of the evaluation matrices at `X` of the monomials of degree at
/// most `k`, for `k = 0..=kmax`: the affine Hilbert function of `X`.
#[derive(Clone, Debug, Serialize)]
pub struct EvaluationRanks {
    pub kmax: u32,
    /// Number of monomials of degree at most `k`.
    pub monomials: Vec<usize>,
    pub ranks: Vec<usize>,
}

fn graded_columns(m: usize, kmax: u32) -> (Vec<Monomial>, Vec<usize>) {
    let cols = Monomial::up_to_degree(m, kmax);
    let counts = (0..=kmax)
        .map(|k| cols.iter().filter(|c| c.degree() <= k).count())
        .collect();
    (cols, counts)
}

fn prefix_ranks(pivots: &[usize], counts: &[usize]) -> Vec<usize> {
    counts
        .iter()
        .map(|&n| pivots.iter().filter(|&&p| p < n).count())
        .collect()
}

/// Single echelon over graded columns: the rank of the first `N_k` columns
/// is the number of pivots among them.
pub fn evaluation_ranks(
    x: &SphericalConfiguration,
    kmax: u32,
) -> Result<EvaluationRanks, GammaError> {
    let (cols, counts) = graded_columns(x.dim(), kmax);
    let work = cols.len().saturating_mul(x.len());
    if work > EVALUATION_GUARD {
        return Err(GammaError::Guard(format!(
            "{} x {} evaluation matrix exceeds {EVALUATION_GUARD} entries",
            x.len(),
            cols.len()
        )));
    }
    let pivots = match &x.points {
        PointSet::Integral { .. } => {
            let rows: Vec<Vec<i64>> = (0..x.len())
                .into_par_iter()
                .map(|i| {
                    let p = x.points.integral_row(i).unwrap();
                    cols.iter()
                        .map(|c| {
                            c.exponents()
                                .iter()
                                .zip(p)
                                .map(|(&e, &v)| v.pow(e))
                                .product()
                        })
                        .collect()
                })
                .collect();
            let mut ech = IntEchelon::new(cols.len());
            for r in &rows {
                ech.insert_i64(r);
                if ech.rank() == cols.len() {
                    break;
                }
            }
            ech.pivots()
        }
        PointSet::Exact { field, points, .. } => {
            let rows: Vec<Vec<Scalar>> =
                points
                    .par_iter()
                    .map(|p| {
                        cols.iter()
                            .map(|c| {
                                c.exponents().iter().zip(p).fold(
                                    Scalar::one(*field),
                                    |acc, (&e, v)| if e == 0 { acc } else { &acc * &v.pow(e) },
                                )
                            })
                            .collect()
                    })
                    .collect();
            let mut ech = FieldEchelon::new(cols.len(), *field);
            for r in rows {
                ech.insert(r)?;
                if ech.rank() == cols.len() {
                    break;
                }
            }
            ech.pivots()
        }
    };
    Ok(EvaluationRanks {
        kmax,
        ranks: prefix_ranks(&pivots, &counts),
        monomials: counts,
    })
}

/// Dimension, for `k = 0..=kmax`, of the span of `Nm * (deg <= k-2)` and
/// `L * (deg <= k-1)` over the declared linear forms `L`.
pub fn trivial_dimensions(x: &SphericalConfiguration, kmax: u32) -> Result<Vec<usize>, GammaError> {
    let m = x.dim();
    let f = x.field();
    let (cols, _) = graded_columns(m, kmax);
    let index: HashMap<Monomial, usize> = cols
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let nm = sphere_polynomial(m, &x.r2);
    let forms: Vec<SparsePoly> = x
        .linear_forms
        .iter()
        .map(|l| SparsePoly::linear(&l.coeffs, &l.constant))
        .collect();
    let mut ech = FieldEchelon::new(cols.len(), f);
    let mut out = Vec::with_capacity(kmax as usize + 1);
    let one = Scalar::one(f);
    for k in 0..=kmax {
        let mut fresh: Vec<SparsePoly> = Vec::new();
        if k >= 2 {
            fresh.extend(
                Monomial::all_of_degree(m, k - 2)
                    .iter()
                    .map(|mono| nm.mul_term(mono, &one)),
            );
        }
        if k >= 1 {
            for l in &forms {
                fresh.extend(
                    Monomial::all_of_degree(m, k - 1)
                        .iter()
                        .map(|mono| l.mul_term(mono, &one)),
                );
            }
        }
        for p in fresh {
            let v = p
                .coefficients_in(&index, cols.len())
                .expect("degree within kmax");
            ech.insert(v)?;
        }
        out.push(ech.rank());
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeRow {
    pub k: u32,
    pub monomials: usize,
    pub rank: usize,
    pub nullity: usize,
    pub trivial: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Gamma1Exact {
    /// Least `k <= kmax` with a non-trivial kernel element, if any.
    pub value: Option<u32>,
    pub table: Vec<DegreeRow>,
}

/// `gamma_1` as the least degree at which the evaluation kernel is larger
/// than its trivial part.
pub fn gamma1_exact(x: &SphericalConfiguration, kmax: u32) -> Result<Gamma1Exact, GammaError> {
    let ev = evaluation_ranks(x, kmax)?;
    let triv = trivial_dimensions(x, kmax)?;
    let table: Vec<DegreeRow> = (0..=kmax)
        .map(|k| {
            let i = k as usize;
            DegreeRow {
                k,
                monomials: ev.monomials[i],
                rank: ev.ranks[i],
                nullity: ev.monomials[i] - ev.ranks[i],
                trivial: triv[i],
            }
        })
        .collect();
    let value = table.iter().find(|r| r.nullity > r.trivial).map(|r| r.k);
    Ok(Gamma1Exact { value, table })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: u32,
    pub source: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Gamma1Bounds {
    pub lower: u32,
    pub upper: u32,
    pub lower_sources: Vec<Bound>,
    pub upper_sources: Vec<Bound>,
}

impl Gamma1Bounds {
    pub fn contains(&self, v: u32) -> bool {
        self.lower <= v && v <= self.upper
    }

    pub fn is_tight(&self) -> bool {
        self.lower == self.upper
    }
}

/// Least degree of a generator with nonzero remainder modulo `Nm`, for a
/// spanning configuration (where `Nm` alone generates the trivial part).
/// Family members share one degree, so only the first is divided.
pub fn least_nontrivial_degree(
    x: &SphericalConfiguration,
    g: &GeneratorSet,
) -> Result<Option<u32>, GammaError> {
    if x.is_embedded() {
        return Ok(None);
    }
    let nm = sphere_polynomial(g.nvars, &x.r2.cast(g.field)?);
    let mut best: Option<u32> = None;
    let candidates = g.explicit.iter().cloned().chain(
        g.family
            .as_ref()
            .filter(|f| !f.is_empty())
            .map(|f| f.generator(0, 0)),
    );
    for gen in candidates {
        if matches!(gen.body, GeneratorBody::Sphere { .. }) {
            continue;
        }
        let d = gen.degree();
        if best.is_some_and(|b| d >= b) {
            continue;
        }
        if !gen.to_poly().is_trivial(&nm)? {
            best = Some(d);
        }
    }
    Ok(best)
}

/// Lower bound from design strength `t` (`floor(t/2) + 1`, never below 2)
/// and upper bounds from the inner-product count, `R_k(1)`, and any
/// exhibited non-trivial member.
pub fn gamma1_bounds(
    x: &SphericalConfiguration,
    t: Option<u32>,
    exhibited: Option<u32>,
) -> Gamma1Bounds {
    let mut lower_sources = vec![Bound {
        value: 2,
        source: "no linear form vanishes on a spanning code".into(),
    }];
    if let Some(t) = t {
        lower_sources.push(Bound {
            value: t / 2 + 1,
            source: format!("spherical {t}-design"),
        });
    }
    let d = x.degree_d() as u32;
    let mut upper_sources = vec![if x.antipodal {
        Bound {
            value: d,
            source: format!("sliced zonal polynomial, d = {d}"),
        }
    } else {
        Bound {
            value: d + 1,
            source: format!("zonal polynomial, d = {d}"),
        }
    }];
    upper_sources.push(Bound {
        value: rk1_threshold(x.rank(), x.len()),
        source: "R_k(1) exceeds |X|".into(),
    });
    if let Some(e) = exhibited {
        upper_sources.push(Bound {
            value: e,
            source: "non-trivial generator".into(),
        });
    }
    let lower = lower_sources.iter().map(|b| b.value).max().unwrap();
    let upper = upper_sources.iter().map(|b| b.value).min().unwrap();
    Gamma1Bounds {
        lower,
        upper,
        lower_sources,
        upper_sources,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Gamma2Status {
    /// Top degree of a generating set known to generate the ideal.
    pub upper: u32,
    pub level: CertificateLevel,
    /// `gamma_1 = gamma_2 = upper` follows from `gamma_1 <= gamma_2`.
    pub equals_gamma1: bool,
}

pub fn gamma2_status(
    gamma1: Option<u32>,
    max_degree: u32,
    level: CertificateLevel,
) -> Gamma2Status {
    Gamma2Status {
        upper: max_degree,
        level,
        equals_gamma1: gamma1 == Some(max_degree),
    }
}

/// Everything known about the two parameters of one configuration.
#[derive(Clone, Debug, Serialize)]
pub struct GammaResult {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma1: Option<u32>,
    pub bounds: Gamma1Bounds,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Gamma1Exact>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma2: Option<Gamma2Status>,
    /// `(k, R_k(1))` up to the threshold degree.
    pub rk_table: Vec<(u32, String)>,
}

impl GammaResult {
    pub fn new(
        x: &SphericalConfiguration,
        bounds: Gamma1Bounds,
        exact: Option<Gamma1Exact>,
    ) -> Self {
        let m = x.rank();
        let top = rk1_threshold(m, x.len());
        let gamma1 = exact
            .as_ref()
            .and_then(|e| e.value)
            .or(bounds.is_tight().then_some(bounds.lower));
        GammaResult {
            gamma1,
            bounds,
            exact,
            gamma2: None,
            rk_table: (0..=top).map(|k| (k, rk1(m, k).to_string())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{
        build_e8, build_icosahedron, build_knn, build_ngon, default_ngon_parameters,
    };

    #[test]
    fn rk1_values() {
        assert_eq!(rk1(24, 5), BigUint::from(115830u32));
        assert_eq!(rk1(24, 6), BigUint::from(573300u32));
        assert_eq!(rk1(8, 3), BigUint::from(156u32));
        assert_eq!(rk1(8, 4), BigUint::from(450u32));
        assert_eq!(rk1_threshold(24, 196560), 6);
        assert_eq!(rk1_threshold(6, 72), 3);
        assert_eq!(rk1(3, 1), BigUint::from(4u32));
    }

    #[test]
    fn small_gamma1() {
        assert_eq!(
            gamma1_exact(&build_icosahedron(), 3).unwrap().value,
            Some(3)
        );
        assert_eq!(gamma1_exact(&build_e8(), 4).unwrap().value, Some(4));
        for n in [4, 6, 8] {
            let x = build_ngon(n, &default_ngon_parameters(n)).unwrap();
            assert_eq!(
                gamma1_exact(&x, n as u32).unwrap().value,
                Some(n as u32 / 2)
            );
        }
    }

    #[test]
    fn embedded_trivial_part() {
        let x = build_knn(3).unwrap();
        let ev = evaluation_ranks(&x, 2).unwrap();
        assert_eq!(ev.ranks[1], 5);
        let g = gamma1_exact(&x, 2).unwrap();
        assert_eq!(g.value, Some(2));
        assert_eq!(g.table[1].nullity, g.table[1].trivial);
    }

    #[test]
    fn icosahedron_degree_two_nullity() {
        let ev = evaluation_ranks(&build_icosahedron(), 2).unwrap();
        assert_eq!(ev.monomials[2] - ev.ranks[2], 1);
    }
}
