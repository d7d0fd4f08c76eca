use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exact::{Field, Scalar};

use super::{Monomial, MonomialOrdering, PolyError};

/// Sparse multivariate polynomial over an exact field.
///
/// Terms are kept sorted in strictly descending order with respect to the
/// polynomial's ordering, with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparsePoly {
    nvars: usize,
    field: Field,
    ordering: MonomialOrdering,
    terms: Vec<(Monomial, Scalar)>,
}

impl SparsePoly {
    pub fn zero(nvars: usize, field: Field) -> Self {
        SparsePoly {
            nvars,
            field,
            ordering: MonomialOrdering::grevlex(nvars),
            terms: Vec::new(),
        }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        let field = c.field();
        let mut p = Self::zero(nvars, field);
        if !c.is_zero() {
            p.terms.push((Monomial::one(nvars), c));
        }
        p
    }

    pub fn one(nvars: usize, field: Field) -> Self {
        Self::constant(Scalar::one(field), nvars)
    }

    /// The variable `Y_{i+1}` (zero-based index `i`).
    pub fn var(i: usize, nvars: usize, field: Field) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut p = Self::zero(nvars, field);
        p.terms.push((Monomial::var(nvars, i), Scalar::one(field)));
        p
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(m.nvars(), c.field());
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// `sum coeffs[i] * Y_{i+1} - constant`.
    pub fn linear(coeffs: &[Scalar], constant: &Scalar) -> Self {
        let nvars = coeffs.len();
        let field = constant.field();
        let mut terms: Vec<(Monomial, Scalar)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::var(nvars, i), c.clone()))
            .collect();
        if !constant.is_zero() {
            terms.push((Monomial::one(nvars), -constant));
        }
        Self::from_terms(nvars, field, terms)
    }

    /// Builds a polynomial from arbitrary terms (duplicates are combined).
    pub fn from_terms(nvars: usize, field: Field, terms: Vec<(Monomial, Scalar)>) -> Self {
        Self::from_terms_ordered(nvars, field, MonomialOrdering::grevlex(nvars), terms)
    }

    pub fn from_terms_ordered(
        nvars: usize,
        field: Field,
        ordering: MonomialOrdering,
        terms: Vec<(Monomial, Scalar)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            assert_eq!(c.field(), field, "coefficient field");
            match acc.get_mut(&m) {
                Some(v) => *v += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, Scalar)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ordering.cmp(&b.0, &a.0));
        SparsePoly {
            nvars,
            field,
            ordering,
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ordering(&self) -> &MonomialOrdering {
        &self.ordering
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(Monomial, Scalar)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    /// Re-sorts the terms under another ordering.
    pub fn with_ordering(mut self, ordering: MonomialOrdering) -> Self {
        assert_eq!(ordering.nvars(), self.nvars, "ordering arity");
        self.terms.sort_by(|a, b| ordering.cmp(&b.0, &a.0));
        self.ordering = ordering;
        self
    }

    fn compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::Arity(self.nvars, other.nvars));
        }
        if self.field != other.field {
            return Err(PolyError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let o = &self.ordering;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &Scalar| if negate { -c } else { c.clone() };
        let mut other_terms: Vec<&(Monomial, Scalar)> = other.terms.iter().collect();
        if other.ordering != self.ordering {
            other_terms.sort_by(|a, b| o.cmp(&b.0, &a.0));
        }
        while i < self.terms.len() && j < other_terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = other_terms[j];
            match o.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), rhs(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other_terms[j..].iter().map(|(m, c)| (m.clone(), rhs(c))));
        SparsePoly {
            nvars: self.nvars,
            field: self.field,
            ordering: self.ordering.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars, self.field).with_ordering(self.ordering.clone()));
        }
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let o = &self.ordering;
        let mut terms: Vec<(Monomial, Scalar)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| o.cmp(&b.0, &a.0));
        Ok(SparsePoly {
            nvars: self.nvars,
            field: self.field,
            ordering: o.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        assert_eq!(c.field(), self.field, "scalar field");
        if c.is_zero() {
            return Self::zero(self.nvars, self.field).with_ordering(self.ordering.clone());
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        SparsePoly {
            terms,
            ..self.clone_shell()
        }
    }

    /// `c * m * self`; ordering is multiplicative so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Self {
        if c.is_zero() {
            return self.clone_shell();
        }
        let terms = self.terms.iter().map(|(t, x)| (t.mul(m), x * c)).collect();
        SparsePoly {
            terms,
            ..self.clone_shell()
        }
    }

    fn clone_shell(&self) -> Self {
        SparsePoly {
            nvars: self.nvars,
            field: self.field,
            ordering: self.ordering.clone(),
            terms: Vec::new(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.field).with_ordering(self.ordering.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divides every coefficient by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inverse().expect("nonzero leading coefficient")),
        }
    }

    pub fn eval(&self, x: &[Scalar]) -> Result<Scalar, PolyError> {
        if x.len() != self.nvars {
            return Err(PolyError::Arity(self.nvars, x.len()));
        }
        if let Some(bad) = x.iter().find(|v| v.field() != self.field) {
            return Err(PolyError::FieldMismatch(self.field, bad.field()));
        }
        let max_exp = self
            .terms
            .iter()
            .flat_map(|(m, _)| m.exponents().iter().copied())
            .max()
            .unwrap_or(0);
        // powers[i][e] = x_i^e
        let powers: Vec<Vec<Scalar>> = x
            .iter()
            .map(|xi| {
                let mut row = Vec::with_capacity(max_exp as usize + 1);
                row.push(Scalar::one(self.field));
                for e in 1..=max_exp as usize {
                    let next = &row[e - 1] * xi;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut total = Scalar::zero(self.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= &powers[i][e as usize];
                }
            }
            total += &t;
        }
        Ok(total)
    }

    /// Exact evaluation at an integer point, for rational polynomials with
    /// integer coefficients only.
    pub fn eval_integer(&self, x: &[i64]) -> Option<num_bigint::BigInt> {
        use num_bigint::BigInt;
        let mut total = BigInt::from(0);
        for (m, c) in &self.terms {
            let mut t = c.to_bigint()?;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= BigInt::from(x[i]).pow(e);
                }
            }
            total += t;
        }
        Some(total)
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Self, PolyError> {
        if i >= self.nvars {
            return Err(PolyError::VariableIndex(i, self.nvars));
        }
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            terms.push((
                Monomial::from_exponents(exps),
                c * &Scalar::from_int(i64::from(e), self.field),
            ));
        }
        Ok(Self::from_terms_ordered(
            self.nvars,
            self.field,
            self.ordering.clone(),
            terms,
        ))
    }

    pub fn gradient(&self) -> Vec<SparsePoly> {
        (0..self.nvars)
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// Substitutes `Y_j := images[j]` for every variable.
    pub fn compose(&self, images: &[SparsePoly]) -> Result<Self, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::Arity(self.nvars, images.len()));
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut total = SparsePoly::zero(target, self.field);
        for (m, c) in &self.terms {
            let mut t = SparsePoly::constant(c.clone(), target);
            for (j, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.checked_mul(&images[j].pow(e))?;
                }
            }
            total = total.checked_add(&t)?;
        }
        Ok(total)
    }

    /// Coefficients as a vector over `basis` (monomials absent from the
    /// polynomial get zero). Fails if a term falls outside `basis`.
    pub fn coefficients_in(
        &self,
        index: &HashMap<Monomial, usize>,
        len: usize,
    ) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(self.field); len];
        for (m, c) in &self.terms {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    }

    /// Converts coefficients into another field (e.g. Q into Q(sqrt 5)).
    pub fn cast(&self, field: Field) -> Result<Self, PolyError> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), c.cast(field)?)))
            .collect::<Result<Vec<_>, PolyError>>()?;
        Ok(SparsePoly {
            nvars: self.nvars,
            field,
            ordering: self.ordering.clone(),
            terms,
        })
    }

    /// Multivariate division: returns `(quotients, remainder)` with
    /// `self = sum q_i d_i + r` and no term of `r` divisible by a leading
    /// monomial of a divisor. Divisors are reordered to `self`'s ordering.
    pub fn divide(
        &self,
        divisors: &[SparsePoly],
    ) -> Result<(Vec<SparsePoly>, SparsePoly), PolyError> {
        let o = self.ordering.clone();
        let divs: Vec<SparsePoly> = divisors
            .iter()
            .map(|d| d.clone().with_ordering(o.clone()))
            .collect();
        for d in &divs {
            self.compatible(d)?;
            if d.is_zero() {
                return Err(PolyError::ZeroDivisor);
            }
        }
        let mut quotients: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); divs.len()];
        let mut remainder = Vec::new();
        let mut p = self.clone();
        let inverses: Vec<Scalar> = divs
            .iter()
            .map(|d| d.leading_coefficient().unwrap().inverse().expect("nonzero"))
            .collect();
        while let Some((lm, lc)) = p.terms.first().cloned() {
            let hit = divs
                .iter()
                .position(|d| d.leading_monomial().unwrap().divides(&lm));
            match hit {
                Some(k) => {
                    let m = lm.div(divs[k].leading_monomial().unwrap());
                    let c = &lc * &inverses[k];
                    p = p.merge(&divs[k].mul_term(&m, &c), true);
                    quotients[k].push((m, c));
                }
                None => {
                    remainder.push((lm, lc));
                    p.terms.remove(0);
                }
            }
        }
        let shell = |terms: Vec<(Monomial, Scalar)>| {
            let mut q = SparsePoly {
                nvars: self.nvars,
                field: self.field,
                ordering: o.clone(),
                terms,
            };
            q.terms.sort_by(|a, b| o.cmp(&b.0, &a.0));
            q
        };
        Ok((quotients.into_iter().map(shell).collect(), shell(remainder)))
    }

    /// True iff `nm` divides `self` (the polynomial is a multiple of the
    /// sphere equation).
    pub fn is_trivial(&self, nm: &SparsePoly) -> Result<bool, PolyError> {
        Ok(self.divide(std::slice::from_ref(nm))?.1.is_zero())
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&SparsePoly> for &SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: &SparsePoly) -> SparsePoly {
                self.$checked(rhs).expect("incompatible polynomials")
            }
        }
        impl $tr<SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$checked(&rhs).expect("incompatible polynomials")
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        SparsePoly {
            terms,
            ..self.clone_shell()
        }
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

/// `sum Y_i^2 - r2`.
pub fn sphere_polynomial(nvars: usize, r2: &Scalar) -> SparsePoly {
    let field = r2.field();
    let mut terms: Vec<(Monomial, Scalar)> = (0..nvars)
        .map(|i| {
            let mut e = vec![0; nvars];
            e[i] = 2;
            (Monomial::from_exponents(e), Scalar::one(field))
        })
        .collect();
    terms.push((Monomial::one(nvars), -r2));
    SparsePoly::from_terms(nvars, field, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n, Field::Rational)
    }

    fn y(i: usize, n: usize) -> SparsePoly {
        SparsePoly::var(i, n, Field::Rational)
    }

    #[test]
    fn difference_of_squares() {
        let one = SparsePoly::one(1, Field::Rational);
        let p = &(&y(0, 1) - &one) * &(&y(0, 1) + &one);
        assert_eq!(p, &y(0, 1).pow(2) - &one);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn division_identity_and_remainder() {
        let nm = sphere_polynomial(2, &q(1));
        let g = &y(0, 2) + &SparsePoly::constant(q(3), 2);
        let (qs, r) = (&nm * &g).divide(std::slice::from_ref(&nm)).unwrap();
        assert!(r.is_zero());
        assert_eq!(qs[0], g);
        let (_, r) = y(0, 2).divide(&[y(1, 2)]).unwrap();
        assert_eq!(r, y(0, 2));
        assert!(SparsePoly::zero(2, Field::Rational)
            .is_trivial(&nm)
            .unwrap());
    }

    #[test]
    fn derivative_and_gradient() {
        let p = y(0, 2).pow(2);
        assert_eq!(p.partial_derivative(0).unwrap(), y(0, 2).scale(&q(2)));
        let nm = sphere_polynomial(2, &q(25));
        let x = [q(3), q(4)];
        let g: Vec<Scalar> = nm.gradient().iter().map(|d| d.eval(&x).unwrap()).collect();
        assert_eq!(g, vec![q(6), q(8)]);
        assert!(p.partial_derivative(2).is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = SparsePoly::one(1, Field::Rational);
        let b = SparsePoly::one(1, Field::Quadratic(5));
        assert!(a.checked_add(&b).is_err());
    }
}
