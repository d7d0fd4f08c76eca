//! Lattice bases from generating sets, unimodularity, and Fincke-Pohst
//! short-vector enumeration.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::exact::{bareiss_det_int, hnf_i64_rows, ExactMatrix, Field, Scalar};

use super::{ConfigError, SphericalConfiguration};

/// A full-rank lattice basis stored as integer rows `den * b_i`.
///
/// `scale` is the factor `s` such that the stored rows, divided by
/// `sqrt s`, span the named lattice; for a unimodular target
/// `det(Gram) = s^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub rows: Vec<Vec<BigInt>>,
    pub den: i64,
    pub scale: BigInt,
    pub gram: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn new(rows: Vec<Vec<BigInt>>, den: i64, scale: BigInt) -> Self {
        let gram = rows
            .iter()
            .map(|a| {
                rows.iter()
                    .map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum())
                    .collect()
            })
            .collect();
        LatticeBasis {
            rows,
            den,
            scale,
            gram,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Determinant of the (stored, integer) basis matrix.
    pub fn det(&self) -> BigInt {
        bareiss_det_int(&self.rows)
    }

    pub fn gram_det(&self) -> BigInt {
        bareiss_det_int(&self.gram)
    }

    /// `det(Gram) / s^m`, the determinant of the named lattice.
    pub fn scaled_gram_det(&self) -> BigRational {
        BigRational::new(self.gram_det(), self.scale.pow(self.dim() as u32))
    }

    pub fn is_unimodular(&self) -> bool {
        self.scaled_gram_det().is_one()
    }

    pub fn gram_matrix(&self) -> ExactMatrix {
        let rows = self
            .gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| Scalar::from_bigint(v.clone(), Field::Rational))
                    .collect()
            })
            .collect();
        ExactMatrix::from_rows(rows, Field::Rational).expect("square")
    }
}

/// Hermite-normal-form basis of the lattice spanned by an integral
/// configuration's stored rows.
pub fn basis_from_generators(
    x: &SphericalConfiguration,
    scale: i64,
) -> Result<LatticeBasis, ConfigError> {
    let den = x.points.den();
    if x.points.integral_row(0).is_none() {
        return Err(ConfigError::Parameter(
            "lattice basis needs integral coordinates".into(),
        ));
    }
    let m = x.dim();
    let rows = hnf_i64_rows((0..x.len()).map(|i| x.points.integral_row(i).unwrap()), m);
    if rows.len() != m {
        return Err(ConfigError::RankDeficient(rows.len(), m));
    }
    Ok(LatticeBasis::new(rows, den, BigInt::from(scale)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    /// Number of nonzero lattice vectors with squared norm at most the bound.
    pub count: usize,
    /// Search-tree nodes visited.
    pub nodes: u64,
    /// The vectors themselves as stored rows (`den * v`), when requested.
    pub vectors: Option<Vec<Vec<i64>>>,
}

struct Search<'a> {
    m: usize,
    d: Vec<f64>,
    /// mu[i][j] = L[j][i] for j > i
    mu: Vec<Vec<f64>>,
    gram: &'a [Vec<i64>],
    rows: &'a [Vec<i64>],
    bound_f: f64,
    bound_int: i128,
    collect: bool,
}

struct Partial {
    count: usize,
    nodes: u64,
    vectors: Vec<Vec<i64>>,
}

const RANGE_MARGIN: f64 = 1e-6;

impl Search<'_> {
    fn level(&self, k: usize, x: &mut [i64], partial: f64, out: &mut Partial) {
        let c: f64 = -(k + 1..self.m)
            .map(|j| self.mu[k][j] * x[j] as f64)
            .sum::<f64>();
        let rem = self.bound_f - partial;
        if rem < -RANGE_MARGIN * self.bound_f.max(1.0) {
            return;
        }
        let r = (rem.max(0.0) / self.d[k]).sqrt() + RANGE_MARGIN;
        let lo = (c - r).ceil() as i64;
        let hi = (c + r).floor() as i64;
        for xi in lo..=hi {
            out.nodes += 1;
            x[k] = xi;
            let t = xi as f64 - c;
            let p = partial + self.d[k] * t * t;
            if k == 0 {
                self.leaf(x, out);
            } else {
                self.level(k - 1, x, p, out);
            }
        }
        x[k] = 0;
    }

    fn leaf(&self, x: &[i64], out: &mut Partial) {
        if x.iter().all(|v| *v == 0) {
            return;
        }
        let mut q: i128 = 0;
        for i in 0..self.m {
            if x[i] == 0 {
                continue;
            }
            let s: i128 = (0..self.m)
                .map(|j| i128::from(self.gram[i][j]) * i128::from(x[j]))
                .sum();
            q += i128::from(x[i]) * s;
        }
        if q > self.bound_int {
            return;
        }
        out.count += 1;
        if self.collect {
            let dim = self.rows[0].len();
            let mut v = vec![0i64; dim];
            for (xi, row) in x.iter().zip(self.rows) {
                if *xi != 0 {
                    for (a, b) in v.iter_mut().zip(row) {
                        *a += xi * b;
                    }
                }
            }
            out.vectors.push(v);
        }
    }
}

/// Fincke-Pohst enumeration of all nonzero lattice vectors with squared
/// norm at most `bound` (in true, not stored, units).
///
/// The Gram matrix is factored exactly as `L D L^T`; the tree search uses a
/// floating copy of the factors with widened ranges, and every leaf is
/// accepted or rejected by an exact integer norm computation.
pub fn enumerate_short_vectors(
    basis: &LatticeBasis,
    bound: &BigRational,
    collect: bool,
) -> Result<EnumerationResult, ConfigError> {
    let m = basis.dim();
    let (l, d) = basis.gram_matrix().ldlt()?;
    let den2 = BigRational::from_integer(BigInt::from(basis.den * basis.den));
    let bound_data = bound * den2;
    if bound_data.is_negative() || bound_data.is_zero() {
        return Ok(EnumerationResult {
            count: 0,
            nodes: 0,
            vectors: collect.then(Vec::new),
        });
    }
    let to_i64 = |v: &BigInt| {
        v.to_i64()
            .ok_or_else(|| ConfigError::Parameter("basis entries exceed 64 bits".into()))
    };
    let gram: Vec<Vec<i64>> = basis
        .gram
        .iter()
        .map(|r| r.iter().map(to_i64).collect())
        .collect::<Result<_, _>>()?;
    let rows: Vec<Vec<i64>> = basis
        .rows
        .iter()
        .map(|r| r.iter().map(to_i64).collect())
        .collect::<Result<_, _>>()?;
    let mut mu = vec![vec![0.0; m]; m];
    for (i, row) in mu.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate().skip(i + 1) {
            *v = l.get(j, i).to_f64();
        }
    }
    let search = Search {
        m,
        d: d.iter().map(Scalar::to_f64).collect(),
        mu,
        gram: &gram,
        rows: &rows,
        bound_f: bound_data.to_f64().unwrap_or(f64::MAX),
        bound_int: bound_data
            .floor()
            .to_integer()
            .to_i128()
            .unwrap_or(i128::MAX),
        collect,
    };
    let top = m - 1;
    let r = (search.bound_f / search.d[top]).sqrt() + RANGE_MARGIN;
    let top_values: Vec<i64> = ((-r).ceil() as i64..=r.floor() as i64).collect();
    let parts: Vec<Partial> = top_values
        .par_iter()
        .map(|&xt| {
            let mut out = Partial {
                count: 0,
                nodes: 1,
                vectors: Vec::new(),
            };
            let mut x = vec![0i64; m];
            x[top] = xt;
            let p = search.d[top] * (xt as f64) * (xt as f64);
            if top == 0 {
                search.leaf(&x, &mut out);
            } else {
                search.level(top - 1, &mut x, p, &mut out);
            }
            out
        })
        .collect();
    let mut result = EnumerationResult {
        count: 0,
        nodes: 0,
        vectors: collect.then(Vec::new),
    };
    for p in parts {
        result.count += p.count;
        result.nodes += p.nodes;
        if let Some(v) = result.vectors.as_mut() {
            v.extend(p.vectors);
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn square_lattice() {
        let b = LatticeBasis::new(big(&[&[1, 0], &[0, 1]]), 1, BigInt::one());
        assert!(b.is_unimodular());
        let q = |n| BigRational::from_integer(BigInt::from(n));
        assert_eq!(enumerate_short_vectors(&b, &q(1), false).unwrap().count, 4);
        assert_eq!(enumerate_short_vectors(&b, &q(2), false).unwrap().count, 8);
        assert_eq!(enumerate_short_vectors(&b, &q(0), false).unwrap().count, 0);
    }

    #[test]
    fn hexagonal_lattice() {
        // A2 with Gram [[2, -1], [-1, 2]] realised as rows of a skewed basis
        let b = LatticeBasis::new(big(&[&[1, -1, 0], &[0, 1, -1]]), 1, BigInt::one());
        assert_eq!(b.gram_det(), BigInt::from(3));
        let r = enumerate_short_vectors(&b, &BigRational::from_integer(2.into()), true).unwrap();
        assert_eq!(r.count, 6);
    }
}
