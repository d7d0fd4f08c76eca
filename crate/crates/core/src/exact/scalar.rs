//! Exact scalars: rationals and elements `a + b*sqrt(d)` of a real quadratic
//! field with `d` in {2, 3, 5}.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ExactError;

/// Coefficient field tag. Every scalar carries one; arithmetic between
/// different tags is rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    /// `Q(sqrt d)`, `d` is one of 2, 3, 5.
    Quadratic(u32),
}

impl Field {
    pub const SUPPORTED_RADICANDS: [u32; 3] = [2, 3, 5];

    pub fn quadratic(d: u32) -> Result<Field, ExactError> {
        if Self::SUPPORTED_RADICANDS.contains(&d) {
            Ok(Field::Quadratic(d))
        } else {
            Err(ExactError::UnsupportedRadicand(d))
        }
    }

    pub fn radicand(self) -> Option<u32> {
        match self {
            Field::Rational => None,
            Field::Quadratic(d) => Some(d),
        }
    }

    /// Parses `Q`, `Q(sqrt 5)`, `Q(sqrt5)` or `Q(sqrt(5))`.
    pub fn parse(text: &str) -> Result<Field, ExactError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "Q" {
            return Ok(Field::Rational);
        }
        let inner = compact
            .strip_prefix("Q(sqrt")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| ExactError::Parse(format!("unknown field `{text}`")))?;
        let digits = inner.trim_start_matches('(').trim_end_matches(')');
        let d: u32 = digits
            .parse()
            .map_err(|_| ExactError::Parse(format!("unknown field `{text}`")))?;
        Field::quadratic(d)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Quadratic(d) => write!(f, "Q(sqrt {d})"),
        }
    }
}

/// An exact element of `Q` or `Q(sqrt d)`.
///
/// Stored as `rational + irrational * sqrt(d)`; both parts are reduced
/// `BigRational`s. For [`Field::Rational`] the irrational part is always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: Field,
    rational: BigRational,
    irrational: BigRational,
}

fn ratio(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn zero(field: Field) -> Self {
        Scalar {
            field,
            rational: BigRational::zero(),
            irrational: BigRational::zero(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::from_int(1, field)
    }

    pub fn from_int(n: i64, field: Field) -> Self {
        Scalar {
            field,
            rational: ratio(n),
            irrational: BigRational::zero(),
        }
    }

    pub fn from_bigint(n: BigInt, field: Field) -> Self {
        Scalar {
            field,
            rational: BigRational::from_integer(n),
            irrational: BigRational::zero(),
        }
    }

    pub fn from_rational(q: BigRational, field: Field) -> Self {
        Scalar {
            field,
            rational: q,
            irrational: BigRational::zero(),
        }
    }

    pub fn fraction(num: i64, den: i64, field: Field) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(BigRational::new(num.into(), den.into()), field)
    }

    /// `a + b*sqrt(d)`.
    pub fn quadratic(a: BigRational, b: BigRational, d: u32) -> Result<Self, ExactError> {
        let field = Field::quadratic(d)?;
        Ok(Scalar {
            field,
            rational: a,
            irrational: b,
        })
    }

    /// `sqrt(d)` as an element of `Q(sqrt d)`.
    pub fn sqrt_of_radicand(field: Field) -> Result<Self, ExactError> {
        match field {
            Field::Rational => Err(ExactError::NotQuadratic),
            Field::Quadratic(_) => Ok(Scalar {
                field,
                rational: BigRational::zero(),
                irrational: BigRational::one(),
            }),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.irrational
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.irrational.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rational.is_one() && self.irrational.is_zero()
    }

    /// True when the value lies in `Q` (regardless of the field tag).
    pub fn is_rational_value(&self) -> bool {
        self.irrational.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.irrational.is_zero() && self.rational.is_integer()
    }

    pub fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.rational.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_bigint().and_then(|n| n.to_i64())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational_value().then(|| self.rational.clone())
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        match self.field {
            Field::Rational => a,
            Field::Quadratic(d) => {
                a + self.irrational.to_f64().unwrap_or(f64::NAN) * f64::from(d).sqrt()
            }
        }
    }

    /// Re-tags the value in another field. Embedding `Q` into `Q(sqrt d)` always
    /// works; going back requires a zero irrational part.
    pub fn cast(&self, target: Field) -> Result<Self, ExactError> {
        if target == self.field {
            return Ok(self.clone());
        }
        match (self.field, target) {
            (Field::Rational, Field::Quadratic(_)) => Ok(Scalar {
                field: target,
                rational: self.rational.clone(),
                irrational: BigRational::zero(),
            }),
            (Field::Quadratic(_), _) if self.irrational.is_zero() => Ok(Scalar {
                field: target,
                rational: self.rational.clone(),
                irrational: BigRational::zero(),
            }),
            _ => Err(ExactError::FieldMismatch(self.field, target)),
        }
    }

    fn check(&self, other: &Self) -> Result<(), ExactError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(ExactError::FieldMismatch(self.field, other.field))
        }
    }

    fn radicand_ratio(&self) -> BigRational {
        ratio(i64::from(self.field.radicand().unwrap_or(0)))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        Ok(Scalar {
            field: self.field,
            rational: &self.rational + &other.rational,
            irrational: &self.irrational + &other.irrational,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        Ok(Scalar {
            field: self.field,
            rational: &self.rational - &other.rational,
            irrational: &self.irrational - &other.irrational,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        if self.field == Field::Rational {
            return Ok(Scalar {
                field: self.field,
                rational: &self.rational * &other.rational,
                irrational: BigRational::zero(),
            });
        }
        let d = self.radicand_ratio();
        let rational = &self.rational * &other.rational + d * &self.irrational * &other.irrational;
        let irrational = &self.rational * &other.irrational + &self.irrational * &other.rational;
        Ok(Scalar {
            field: self.field,
            rational,
            irrational,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let inv = other.inverse()?;
        self.checked_mul(&inv)
    }

    /// Galois conjugate `a - b*sqrt(d)`; identity on `Q`.
    pub fn conjugate(&self) -> Self {
        Scalar {
            field: self.field,
            rational: self.rational.clone(),
            irrational: -&self.irrational,
        }
    }

    /// Field norm `a^2 - d*b^2`.
    pub fn norm(&self) -> BigRational {
        &self.rational * &self.rational
            - self.radicand_ratio() * &self.irrational * &self.irrational
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Scalar {
            field: self.field,
            rational: &self.rational / &n,
            irrational: -&self.irrational / &n,
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Scalar::one(self.field);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact sign of the real number `a + b*sqrt(d)`.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.rational);
        let sb = sign_of(&self.irrational);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.rational * &self.rational;
        let db2 = self.radicand_ratio() * &self.irrational * &self.irrational;
        if a2 > db2 {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Total order on values of one field.
    pub fn cmp_value(&self, other: &Self) -> Result<Ordering, ExactError> {
        let diff = self.checked_sub(other)?;
        Ok(diff.signum().cmp(&0))
    }

    /// Parses a scalar and tags it with `field`.
    pub fn parse_in(text: &str, field: Field) -> Result<Self, ExactError> {
        text.parse::<Scalar>()?.cast(field)
    }

    /// Least positive integer `q` such that `q * self` has integral parts.
    pub fn denominator_lcm(&self) -> BigInt {
        num_integer::Integer::lcm(self.rational.denom(), self.irrational.denom())
    }
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_value(other).ok()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("scalar arithmetic: {e}"),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        assert_eq!(self.field, rhs.field, "scalar arithmetic: field mismatch");
        self.rational += &rhs.rational;
        self.irrational += &rhs.irrational;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        assert_eq!(self.field, rhs.field, "scalar arithmetic: field mismatch");
        self.rational -= &rhs.rational;
        self.irrational -= &rhs.irrational;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field,
            rational: -&self.rational,
            irrational: -&self.irrational,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field,
            rational: -self.rational,
            irrational: -self.irrational,
        }
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    /// Panics on an empty iterator, which has no field tag.
    fn sum<I: Iterator<Item = &'a Scalar>>(mut iter: I) -> Scalar {
        let first = iter.next().expect("sum of empty scalar iterator").clone();
        iter.fold(first, |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl<'a> Product<&'a Scalar> for Scalar {
    fn product<I: Iterator<Item = &'a Scalar>>(mut iter: I) -> Scalar {
        let first = iter
            .next()
            .expect("product of empty scalar iterator")
            .clone();
        iter.fold(first, |acc, x| &acc * x)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.field {
            Field::Quadratic(d) if !self.irrational.is_zero() => d,
            _ => return write!(f, "{}", fmt_rational(&self.rational)),
        };
        let b = &self.irrational;
        let surd = if b.is_one() {
            format!("sqrt({d})")
        } else if (-b).is_one() {
            format!("-sqrt({d})")
        } else {
            format!("{}*sqrt({d})", fmt_rational(b))
        };
        if self.rational.is_zero() {
            write!(f, "{surd}")
        } else if b.is_positive() {
            write!(f, "{}+{surd}", fmt_rational(&self.rational))
        } else {
            write!(f, "{}{surd}", fmt_rational(&self.rational))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{}]", self.field)
    }
}

impl FromStr for Scalar {
    type Err = ExactError;

    /// Accepts `-3`, `7/2`, `sqrt(5)`, `-3/2*sqrt(5)`, `1/2+3/2*sqrt(5)`,
    /// optionally wrapped in parentheses; whitespace is ignored. The field is
    /// inferred: `Q(sqrt d)` when a surd is present, `Q` otherwise.
    fn from_str(text: &str) -> Result<Self, ExactError> {
        let mut s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        while s.starts_with('(') && s.ends_with(')') && balanced_outer(&s) {
            s = s[1..s.len() - 1].to_string();
        }
        if s.is_empty() {
            return Err(ExactError::Parse("empty scalar".into()));
        }
        let mut rational = BigRational::zero();
        let mut irrational = BigRational::zero();
        let mut radicand: Option<u32> = None;
        for (sign, term) in split_signed_terms(&s)? {
            let (coef, surd) = parse_term(term)?;
            let coef = if sign < 0 { -coef } else { coef };
            match surd {
                None => rational += coef,
                Some(d) => {
                    if radicand.is_some_and(|r| r != d) {
                        return Err(ExactError::Parse(format!("mixed radicands in `{text}`")));
                    }
                    radicand = Some(d);
                    irrational += coef;
                }
            }
        }
        match radicand {
            None => Ok(Scalar::from_rational(rational, Field::Rational)),
            Some(d) => Scalar::quadratic(rational, irrational, d),
        }
    }
}

fn balanced_outer(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i + 1 != s.len() {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

fn split_signed_terms(s: &str) -> Result<Vec<(i32, &str)>, ExactError> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut sign = 1;
    let mut depth = 0;
    let mut i = 0;
    if matches!(bytes.first(), Some(b'+') | Some(b'-')) {
        sign = if bytes[0] == b'-' { -1 } else { 1 };
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                out.push((sign, &s[start..i]));
                sign = if bytes[i] == b'-' { -1 } else { 1 };
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    out.push((sign, &s[start..]));
    if out.iter().any(|(_, t)| t.is_empty()) {
        return Err(ExactError::Parse(format!("malformed scalar `{s}`")));
    }
    Ok(out)
}

fn parse_term(term: &str) -> Result<(BigRational, Option<u32>), ExactError> {
    let mut coef = BigRational::one();
    let mut surd = None;
    for factor in term.split('*') {
        if let Some(rest) = factor.strip_prefix("sqrt(") {
            let d: u32 = rest
                .strip_suffix(')')
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| ExactError::Parse(format!("malformed surd `{factor}`")))?;
            Field::quadratic(d)?;
            if surd.is_some() {
                return Err(ExactError::Parse(format!("repeated surd in `{term}`")));
            }
            surd = Some(d);
        } else {
            coef *= parse_rational(factor)?;
        }
    }
    Ok((coef, surd))
}

pub(crate) fn parse_rational(text: &str) -> Result<BigRational, ExactError> {
    let bad = || ExactError::Parse(format!("malformed rational `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}
