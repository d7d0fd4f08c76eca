//! Point-set text format: a header `dim m norm r2 field F` followed by one
//! vector per line (whitespace- or comma-separated scalars). Lines starting
//! with `#` are comments.

use std::fmt::Write as _;

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::exact::{Field, Scalar};

use super::{ConfigError, PointSet, SphericalConfiguration};

/// Contents of a point file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointFile {
    pub dim: usize,
    pub r2: Scalar,
    pub field: Field,
    pub points: Vec<Vec<Scalar>>,
}

impl PointFile {
    /// Integral storage when every coordinate is rational and the common
    /// denominator keeps entries within `i64`, exact storage otherwise.
    pub fn to_point_set(&self) -> PointSet {
        if self.field == Field::Rational {
            let mut den = num_bigint::BigInt::one();
            for v in self.points.iter().flatten() {
                den = den.lcm(&v.denominator_lcm());
            }
            let scaled: Option<Vec<i64>> = self
                .points
                .iter()
                .flatten()
                .map(|v| (v.rational_part() * &den).to_integer().to_i64())
                .collect();
            if let (Some(data), Some(den)) = (scaled, den.to_i64()) {
                return PointSet::Integral {
                    dim: self.dim,
                    den,
                    data,
                };
            }
        }
        PointSet::Exact {
            dim: self.dim,
            field: self.field,
            points: self.points.clone(),
        }
    }
}

pub fn write_points(x: &SphericalConfiguration) -> String {
    let mut out = format!("dim {} norm {} field {}\n", x.dim(), x.r2, x.field());
    for p in x.points.points() {
        let line: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn read_points(text: &str) -> Result<PointFile, ConfigError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| ConfigError::PointFile("empty file".into()))?;
    let err = |m: String| ConfigError::PointFile(m);
    let rest = header
        .strip_prefix("dim")
        .ok_or_else(|| err(format!("bad header `{header}`")))?;
    let (dim, rest) = rest
        .trim()
        .split_once(char::is_whitespace)
        .ok_or_else(|| err("bad header".into()))?;
    let dim: usize = dim
        .parse()
        .map_err(|_| err(format!("bad dimension `{dim}`")))?;
    let rest = rest
        .trim()
        .strip_prefix("norm")
        .ok_or_else(|| err("missing `norm`".into()))?;
    let (norm, field) = rest
        .split_once("field")
        .ok_or_else(|| err("missing `field`".into()))?;
    let field = Field::parse(field.trim())?;
    let r2 = Scalar::parse_in(norm.trim(), field)?;
    let mut points = Vec::new();
    for (k, line) in lines.enumerate() {
        let tokens: Vec<&str> = if line.contains(',') {
            line.split(',').map(str::trim).collect()
        } else {
            line.split_whitespace().collect()
        };
        if tokens.len() != dim {
            return Err(err(format!(
                "vector {} has {} entries, expected {dim}",
                k + 1,
                tokens.len()
            )));
        }
        let p = tokens
            .iter()
            .map(|t| Scalar::parse_in(t, field))
            .collect::<Result<Vec<_>, _>>()?;
        points.push(p);
    }
    Ok(PointFile {
        dim,
        r2,
        field,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{build_e8, build_icosahedron};

    #[test]
    fn round_trip_rational_and_quadratic() {
        let e8 = build_e8();
        let f = read_points(&write_points(&e8)).unwrap();
        assert_eq!(f.points.len(), 240);
        assert_eq!(f.to_point_set(), e8.points);
        let ico = build_icosahedron();
        let g = read_points(&write_points(&ico)).unwrap();
        assert_eq!(g.to_point_set(), ico.points);
        assert_eq!(g.r2, ico.r2);
    }

    #[test]
    fn commas_and_errors() {
        let f = read_points("dim 2 norm 1 field Q\n1, 0\n3/5,4/5\n").unwrap();
        assert_eq!(f.points.len(), 2);
        assert!(read_points("dim 2 norm 1 field Q\n1 0 0\n").is_err());
        assert!(read_points("nonsense").is_err());
    }
}
