//! Buchberger's algorithm over exact fields, quotient data of
//! zero-dimensional ideals, and full certification that a generating set
//! cuts out a configuration as a radical ideal.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::config::{DistributionMode, SphericalConfiguration};
use crate::gamma::{evaluation_ranks, GammaError};
use crate::generators::GeneratorSet;
use crate::poly::{Monomial, MonomialOrdering, PolyError, SparsePoly};
use crate::verify::{check_vanishing, CertificateLevel};

/// Default number of reduction steps before giving up.
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// Largest staircase enumerated by [`quotient_data`].
pub const QUOTIENT_GUARD: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("reduction budget of {0} steps exhausted")]
    Budget(usize),
    #[error("ideal is not zero-dimensional (no pure power of Y{0} among the leading terms)")]
    NotZeroDimensional(usize),
    #[error("more than {0} standard monomials")]
    Guard(usize),
    #[error("empty generating set")]
    Empty,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
}

/// Fully reduces `p` modulo monic `basis`; `steps` counts reductions.
fn reduce_counted(mut p: SparsePoly, basis: &[SparsePoly], steps: &mut usize) -> SparsePoly {
    let mut rem = Vec::new();
    let (nvars, field, ordering) = (p.nvars(), p.field(), p.ordering().clone());
    while let Some((lm, lc)) = p.leading_term().cloned() {
        match basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|l| l.divides(&lm)))
        {
            Some(g) => {
                let m = lm.div(g.leading_monomial().unwrap());
                p = &p - &g.mul_term(&m, &lc);
                *steps += 1;
            }
            None => {
                rem.push(p.pop_leading().unwrap());
            }
        }
    }
    SparsePoly::from_terms_ordered(nvars, field, ordering, rem)
}

/// Normal form of `p` modulo the monic polynomials in `basis`.
pub fn normal_form(p: &SparsePoly, basis: &[SparsePoly]) -> SparsePoly {
    let mut steps = 0;
    reduce_counted(p.clone(), basis, &mut steps)
}

pub fn s_polynomial(f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
    let (lf, cf) = f.leading_term().expect("nonzero");
    let (lg, cg) = g.leading_term().expect("nonzero");
    let l = lf.lcm(lg);
    let a = f.mul_term(&l.div(lf), &cf.inverse().expect("nonzero"));
    let b = g.mul_term(&l.div(lg), &cg.inverse().expect("nonzero"));
    &a - &b
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub polys: Vec<SparsePoly>,
    pub ordering: MonomialOrdering,
    pub reduced: bool,
    /// Reduction steps spent.
    pub steps: usize,
}

impl GroebnerBasis {
    pub fn normal_form(&self, p: &SparsePoly) -> SparsePoly {
        normal_form(&p.clone().with_ordering(self.ordering.clone()), &self.polys)
    }

    pub fn contains(&self, p: &SparsePoly) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| p.leading_monomial().unwrap().clone())
            .collect()
    }

    /// Every S-polynomial reduces to zero.
    pub fn is_groebner(&self) -> bool {
        (0..self.polys.len()).all(|i| {
            (i + 1..self.polys.len()).all(|j| {
                normal_form(&s_polynomial(&self.polys[i], &self.polys[j]), &self.polys).is_zero()
            })
        })
    }

    /// True iff the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1
            && self.polys[0]
                .leading_monomial()
                .is_some_and(Monomial::is_one)
    }

    pub fn export_text(&self) -> String {
        self.polys.iter().map(|p| format!("{p}\n")).collect()
    }
}

fn by_lcm_degree(basis: &[SparsePoly], (i, j): (usize, usize)) -> (u32, usize, usize) {
    let l = basis[i]
        .leading_monomial()
        .unwrap()
        .lcm(basis[j].leading_monomial().unwrap());
    (l.degree(), j, i)
}

/// Reduced Groebner basis of `gens` under `ordering`, with normal pair
/// selection and the coprime and chain criteria.
pub fn buchberger(
    gens: &[SparsePoly],
    ordering: &MonomialOrdering,
    budget: usize,
) -> Result<GroebnerBasis, GroebnerError> {
    let first = gens.first().ok_or(GroebnerError::Empty)?;
    for g in gens {
        first.checked_add(g)?;
    }
    let mut steps = 0usize;
    let mut basis: Vec<SparsePoly> = Vec::new();
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let add = |p: SparsePoly,
               basis: &mut Vec<SparsePoly>,
               pairs: &mut BTreeSet<(u32, usize, usize)>,
               pending: &mut HashSet<(usize, usize)>| {
        basis.push(p.monic());
        let j = basis.len() - 1;
        for i in 0..j {
            pairs.insert(by_lcm_degree(basis, (i, j)));
            pending.insert((i, j));
        }
    };
    let mut input: VecDeque<SparsePoly> = gens
        .iter()
        .map(|g| g.clone().with_ordering(ordering.clone()))
        .collect();
    while let Some(g) = input.pop_front() {
        let r = reduce_counted(g, &basis, &mut steps);
        if !r.is_zero() {
            add(r, &mut basis, &mut pairs, &mut pending);
        }
    }
    while let Some(key) = pairs.pop_first() {
        if steps > budget {
            return Err(GroebnerError::Budget(budget));
        }
        let (_, j, i) = key;
        pending.remove(&(i, j));
        let (li, lj) = (
            basis[i].leading_monomial().unwrap().clone(),
            basis[j].leading_monomial().unwrap().clone(),
        );
        if li.is_coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = reduce_counted(s_polynomial(&basis[i], &basis[j]), &basis, &mut steps);
        if !r.is_zero() {
            add(r, &mut basis, &mut pairs, &mut pending);
        }
    }
    let polys = interreduce(basis, &mut steps);
    Ok(GroebnerBasis {
        polys,
        ordering: ordering.clone(),
        reduced: true,
        steps,
    })
}

fn interreduce(basis: Vec<SparsePoly>, steps: &mut usize) -> Vec<SparsePoly> {
    let mut minimal: Vec<SparsePoly> = Vec::new();
    for (k, p) in basis.iter().enumerate() {
        let lm = p.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(q, other)| {
            let lo = other.leading_monomial().unwrap();
            q != k && lo.divides(lm) && (lo != lm || q < k)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<SparsePoly> = minimal
            .iter()
            .enumerate()
            .filter(|(q, _)| *q != k)
            .map(|(_, p)| p.clone())
            .collect();
        let mut p = minimal[k].clone();
        let lead = p.pop_leading().unwrap();
        let tail = reduce_counted(p, &others, steps);
        let mut terms = vec![lead];
        terms.extend(tail.terms().iter().cloned());
        let (nvars, field, ord) = (tail.nvars(), tail.field(), tail.ordering().clone());
        out.push(SparsePoly::from_terms_ordered(nvars, field, ord, terms).monic());
    }
    let ord = out.first().map(|p| p.ordering().clone());
    if let Some(o) = ord {
        out.sort_by(|a, b| o.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    }
    out
}

/// Standard monomials of a zero-dimensional ideal and the Hilbert
/// function they induce.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientData {
    #[serde(skip)]
    pub standard: Vec<Monomial>,
    pub dimension: usize,
    /// `by_degree[j]` standard monomials of degree `j`.
    pub by_degree: Vec<usize>,
}

impl QuotientData {
    /// Standard monomials of degree at most `k`; for a degree-compatible
    /// ordering this is the affine Hilbert function.
    pub fn affine_hilbert(&self, k: usize) -> usize {
        self.by_degree.iter().take(k + 1).sum()
    }
}

pub fn quotient_data(gb: &GroebnerBasis) -> Result<QuotientData, GroebnerError> {
    let lms = gb.leading_monomials();
    let nvars = gb.ordering.nvars();
    for v in 0..nvars {
        let pure = lms
            .iter()
            .any(|m| m.exponent(v) > 0 && m.degree() == m.exponent(v));
        if !pure && !gb.is_unit() {
            return Err(GroebnerError::NotZeroDimensional(v + 1));
        }
    }
    let standard_test = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
    let mut standard = Vec::new();
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut queue = VecDeque::new();
    let one = Monomial::one(nvars);
    if standard_test(&one) {
        seen.insert(one.clone());
        queue.push_back(one);
    }
    while let Some(m) = queue.pop_front() {
        for v in 0..nvars {
            let next = m.mul(&Monomial::var(nvars, v));
            if !seen.contains(&next) && standard_test(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        standard.push(m);
        if standard.len() > QUOTIENT_GUARD {
            return Err(GroebnerError::Guard(QUOTIENT_GUARD));
        }
    }
    standard.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| gb.ordering.cmp(b, a))
    });
    let top = standard.iter().map(Monomial::degree).max().unwrap_or(0) as usize;
    let mut by_degree = vec![0; if standard.is_empty() { 0 } else { top + 1 }];
    for m in &standard {
        by_degree[m.degree() as usize] += 1;
    }
    Ok(QuotientData {
        dimension: standard.len(),
        standard,
        by_degree,
    })
}

/// Affine Hilbert function of `X` up to `kmax` from evaluation ranks.
pub fn affine_hilbert_by_evaluation(
    x: &SphericalConfiguration,
    kmax: u32,
) -> Result<Vec<usize>, GroebnerError> {
    Ok(evaluation_ranks(x, kmax)?.ranks)
}

#[derive(Clone, Debug, Serialize)]
pub struct FullCertificate {
    pub level: CertificateLevel,
    pub vanishing: bool,
    pub quotient_dimension: Option<usize>,
    pub points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<String>,
}

impl FullCertificate {
    pub fn is_full(&self) -> bool {
        self.level == CertificateLevel::FullGroebner
    }
}

/// `FULL_GROEBNER` when every generator vanishes on `X` and the quotient
/// has dimension `|X|`: then the zero set is `X`, every zero is simple, and
/// the ideal is radical, so it equals the vanishing ideal.
pub fn certify_full(
    x: &SphericalConfiguration,
    g: &GeneratorSet,
    ordering: &MonomialOrdering,
    budget: usize,
) -> Result<(FullCertificate, GroebnerBasis), GroebnerError> {
    let vanishing = check_vanishing(x, g, DistributionMode::Full).passed();
    let polys: Vec<SparsePoly> = g.iter().map(|gen| gen.to_poly()).collect();
    let gb = buchberger(&polys, ordering, budget)?;
    let quotient = quotient_data(&gb);
    let (qdim, hilbert, diag) = match &quotient {
        Ok(q) => {
            let h: Vec<usize> = (0..q.by_degree.len())
                .map(|k| q.affine_hilbert(k))
                .collect();
            let diag = (q.dimension != x.len()).then(|| {
                format!(
                    "quotient dimension {} differs from {} points",
                    q.dimension,
                    x.len()
                )
            });
            (Some(q.dimension), Some(h), diag)
        }
        Err(e) => (None, None, Some(e.to_string())),
    };
    let diag = if vanishing {
        diag
    } else {
        Some("a generator does not vanish on the configuration".into())
    };
    let full = vanishing && qdim == Some(x.len());
    let level = if full {
        CertificateLevel::FullGroebner
    } else {
        CertificateLevel::PaperCertificate
    };
    Ok((
        FullCertificate {
            level,
            vanishing,
            quotient_dimension: qdim,
            points: x.len(),
            hilbert,
            diagnostics: diag,
        },
        gb,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Field;
    use crate::generators::build_generator_set;
    use crate::poly::{parse_poly, OrderKind};

    fn p(s: &str) -> SparsePoly {
        parse_poly(s, 2, Field::Rational).unwrap()
    }

    #[test]
    fn two_variable_example() {
        let gb = buchberger(
            &[p("Y1^2 - 1"), p("Y2 - Y1")],
            &MonomialOrdering::grevlex(2),
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(gb.polys, vec![p("Y1 - Y2"), p("Y2^2 - 1")]);
        let swapped = MonomialOrdering::with_priority(OrderKind::Grevlex, vec![1, 0]);
        let gb2 = buchberger(&[p("Y1^2 - 1"), p("Y2 - Y1")], &swapped, DEFAULT_BUDGET).unwrap();
        let texts: Vec<String> = gb2.polys.iter().map(|q| q.to_string()).collect();
        assert!(texts.contains(&"Y1^2 - 1".to_string()));
        assert!(gb.is_groebner() && gb2.is_groebner());
        assert_eq!(quotient_data(&gb).unwrap().dimension, 2);
    }

    #[test]
    fn unit_ideal_and_budget() {
        let gb = buchberger(
            &[p("Y1"), p("Y1 - 1")],
            &MonomialOrdering::grevlex(2),
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert!(gb.is_unit());
        assert_eq!(quotient_data(&gb).unwrap().dimension, 0);
        let b = build_generator_set("icosahedron", None).unwrap();
        let polys: Vec<SparsePoly> = b.generators.iter().map(|g| g.to_poly()).collect();
        assert!(matches!(
            buchberger(&polys, &MonomialOrdering::grevlex(3), 3),
            Err(GroebnerError::Budget(3))
        ));
    }

    #[test]
    fn not_zero_dimensional() {
        let gb = buchberger(
            &[p("Y1^2 - 1")],
            &MonomialOrdering::grevlex(2),
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert!(matches!(
            quotient_data(&gb),
            Err(GroebnerError::NotZeroDimensional(2))
        ));
    }

    #[test]
    fn knn2_certificate() {
        let b = build_generator_set("knn", Some(2)).unwrap();
        let (cert, gb) = certify_full(
            &b.config,
            &b.generators,
            &MonomialOrdering::grevlex(4),
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert!(cert.is_full(), "{cert:?}");
        assert_eq!(cert.quotient_dimension, Some(4));
        assert_eq!(cert.hilbert, Some(vec![1, 3, 4]));
        assert!(gb.is_groebner());
    }
}
