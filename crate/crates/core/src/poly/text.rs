//! `coef*Y1^e1*Y2^e2 + ...` text format.

use std::fmt;

use crate::exact::{Field, Scalar};

use super::{Monomial, PolyError, SparsePoly};

fn fmt_monomial(m: &Monomial) -> String {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("Y{}", i + 1)
            } else {
                format!("Y{}^{e}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let negative = c.is_rational_value() && c.is_negative();
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let coef = if mag.is_rational_value() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            if m.is_one() {
                write!(f, "{coef}")?;
            } else if mag.is_one() {
                write!(f, "{}", fmt_monomial(m))?;
            } else {
                write!(f, "{coef}*{}", fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}

/// Parses a polynomial in `nvars` variables with coefficients in `field`.
/// Terms are products of factors separated by `*`: rationals, `sqrt(d)`,
/// parenthesised scalars and `Yi` / `Yi^e`.
pub fn parse_poly(text: &str, nvars: usize, field: Field) -> Result<SparsePoly, PolyError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(PolyError::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    for (sign, body) in split_terms(&s)? {
        let mut coef = Scalar::from_int(sign, field);
        let mut exps = vec![0u32; nvars];
        for factor in split_factors(body) {
            if factor.is_empty() {
                return Err(PolyError::Parse(format!("empty factor in `{body}`")));
            }
            if let Some(rest) = factor.strip_prefix('Y') {
                let (idx, e) = match rest.split_once('^') {
                    Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad(factor))?),
                    None => (rest, 1),
                };
                let i: usize = idx.parse().map_err(|_| bad(factor))?;
                if i == 0 || i > nvars {
                    return Err(PolyError::VariableIndex(i, nvars));
                }
                exps[i - 1] += e;
            } else {
                let v = Scalar::parse_in(factor, field)?;
                coef = coef.checked_mul(&v)?;
            }
        }
        terms.push((Monomial::from_exponents(exps), coef));
    }
    Ok(SparsePoly::from_terms(nvars, field, terms))
}

fn bad(factor: &str) -> PolyError {
    PolyError::Parse(format!("bad factor `{factor}`"))
}

fn split_terms(s: &str) -> Result<Vec<(i64, &str)>, PolyError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut sign = 1;
    let mut i = 0;
    if matches!(bytes[0], b'+' | b'-') {
        sign = if bytes[0] == b'-' { -1 } else { 1 };
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > start && bytes[i - 1] != b'^' => {
                out.push((sign, &s[start..i]));
                sign = if bytes[i] == b'-' { -1 } else { 1 };
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    if depth != 0 {
        return Err(PolyError::Parse("unbalanced parentheses".into()));
    }
    out.push((sign, &s[start..]));
    if out.iter().any(|(_, t)| t.is_empty()) {
        return Err(PolyError::Parse(format!("empty term in `{s}`")));
    }
    Ok(out)
}

fn split_factors(term: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in term.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&term[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&term[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let f5 = Field::Quadratic(5);
        for (text, n, field) in [
            ("Y1^2 - 1", 2, Field::Rational),
            ("-7/2*Y1*Y2^3 + Y3 - 4", 3, Field::Rational),
            ("(1/2+3/2*sqrt(5))*Y1^2 - Y2 + sqrt(5)", 2, f5),
            ("0", 1, Field::Rational),
        ] {
            let p = parse_poly(text, n, field).unwrap();
            let printed = p.to_string();
            assert_eq!(
                parse_poly(&printed, n, field).unwrap(),
                p,
                "{text} -> {printed}"
            );
        }
        let p = parse_poly("2*sqrt(5)*Y1 + 3*Y1", 1, f5).unwrap();
        assert_eq!(p.to_string(), "(3+2*sqrt(5))*Y1");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("Y4", 3, Field::Rational).is_err());
        assert!(parse_poly("Y1 + ", 1, Field::Rational).is_err());
        assert!(parse_poly("(Y1", 1, Field::Rational).is_err());
    }
}
