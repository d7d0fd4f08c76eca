use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::config::{pair_distribution, DistributionMode, PointSet, SphericalConfiguration};
use crate::exact::Scalar;
use crate::poly::Monomial;

use super::VerifyError;

/// Largest number of monomial-point evaluations the moment test accepts.
pub const MOMENT_GUARD: usize = 10_000_000;

/// `C_0(s), ..., C_t(s)` for the ultraspherical family with
/// `alpha = (m - 2)/2`; Chebyshev polynomials of the first kind when
/// `m = 2`.
pub fn gegenbauer_values(m: usize, t: u32, s: &Scalar) -> Vec<Scalar> {
    let f = s.field();
    let q = |n: i64, d: i64| Scalar::fraction(n, d, f);
    let mut out = vec![Scalar::one(f)];
    if t == 0 {
        return out;
    }
    let alpha = q(m as i64 - 2, 2);
    let chebyshev = alpha.is_zero();
    out.push(if chebyshev {
        s.clone()
    } else {
        &(&alpha + &alpha) * s
    });
    for k in 1..t as i64 {
        let (ck, cprev) = (&out[k as usize], &out[k as usize - 1]);
        let next = if chebyshev {
            &(&(s + s) * ck) - cprev
        } else {
            let a = &(&q(2 * k, 1) + &(&alpha + &alpha)) * &(s * ck);
            let b = &(&q(k - 1, 1) + &(&alpha + &alpha)) * cprev;
            &(&a - &b) * &q(1, k + 1)
        };
        out.push(next);
    }
    out
}

#[derive(Clone, Debug)]
pub struct DesignStrengthResult {
    pub config: String,
    pub t: u32,
    pub mode: DistributionMode,
    /// `sums[k - 1]` is the sum over selected base points `x` and all `y`
    /// of `C_k(x . y / r^2)`.
    pub sums: Vec<Scalar>,
    /// Smallest `k` at which some base point's sum is nonzero.
    pub first_failure: Option<u32>,
    pub base_points: usize,
}

impl DesignStrengthResult {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Pair-sum test for strength `t`. In sampled mode each sampled base point
/// must have a zero sum for every `k`, which holds at every point of a
/// design.
pub fn design_strength_gegenbauer(
    x: &SphericalConfiguration,
    t: u32,
    mode: DistributionMode,
) -> Result<DesignStrengthResult, VerifyError> {
    if t < 1 {
        return Err(VerifyError::Strength);
    }
    let dist = pair_distribution(x, mode);
    if let Some((i, j, v)) = &dist.violation {
        return Err(VerifyError::Prerequisite(format!(
            "inner product {v} of points {i}, {j} is not in the list"
        )));
    }
    let r2_inv = x.r2.inverse()?;
    let table: Vec<Vec<Scalar>> = x
        .omegas
        .iter()
        .map(|w| gegenbauer_values(x.dim(), t, &(w * &r2_inv)))
        .collect();
    let f = x.r2.field();
    let mut sums = vec![Scalar::zero(f); t as usize];
    let mut first_failure: Option<u32> = None;
    for hist in &dist.histograms {
        for k in 1..=t as usize {
            let mut s = Scalar::zero(f);
            for (h, &count) in hist.iter().enumerate() {
                if count > 0 {
                    s += &(&table[h][k] * &Scalar::from_int(count as i64, f));
                }
            }
            if !s.is_zero() && first_failure.is_none_or(|j| k as u32 <= j) {
                first_failure = Some(k as u32);
            }
            sums[k - 1] += &s;
        }
    }
    Ok(DesignStrengthResult {
        config: x.name.clone(),
        t,
        mode,
        sums,
        first_failure,
        base_points: dist.base_points.len(),
    })
}

/// Largest `t <= tmax` for which the pair-sum test passes.
pub fn design_strength(
    x: &SphericalConfiguration,
    tmax: u32,
    mode: DistributionMode,
) -> Result<u32, VerifyError> {
    let r = design_strength_gegenbauer(x, tmax, mode)?;
    Ok(r.first_failure.map_or(tmax, |k| k - 1))
}

#[derive(Clone, Debug)]
pub struct MomentResult {
    pub t: u32,
    pub monomials: usize,
    /// Exponents whose point sum differs from the sphere average.
    pub failures: Vec<Vec<u32>>,
}

impl MomentResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// Average of `y^alpha` over the unit sphere in `R^m`.
fn sphere_moment(m: usize, alpha: &[u32]) -> BigRational {
    if alpha.iter().any(|e| e % 2 == 1) {
        return BigRational::zero();
    }
    let num: BigInt = alpha
        .iter()
        .map(|&e| double_factorial(i64::from(e) - 1))
        .product();
    let half: u32 = alpha.iter().sum::<u32>() / 2;
    let den: BigInt = (1..=half as i64)
        .map(|j| BigInt::from(m as i64 + 2 * j - 2))
        .product();
    BigRational::new(num, den)
}

/// Compares `sum_x x^alpha` with `|X| r^|alpha| mu_alpha` for every
/// monomial of degree at most `t`.
pub fn design_strength_moments(
    x: &SphericalConfiguration,
    t: u32,
) -> Result<MomentResult, VerifyError> {
    let m = x.dim();
    let monomials = Monomial::up_to_degree(m, t);
    let work = monomials.len().saturating_mul(x.len());
    if work > MOMENT_GUARD {
        return Err(VerifyError::Guard(format!(
            "{work} monomial evaluations exceed {MOMENT_GUARD}"
        )));
    }
    let n = x.len() as i64;
    let f = x.field();
    let mut failures = Vec::new();
    match &x.points {
        PointSet::Integral { den, .. } => {
            let r2 = x.r2.to_rational().expect("rational norm");
            let rows: Vec<&[i64]> = (0..x.len())
                .map(|i| x.points.integral_row(i).unwrap())
                .collect();
            for mono in &monomials {
                let e = mono.exponents();
                let lhs: BigInt = rows
                    .iter()
                    .map(|row| {
                        row.iter().zip(e).fold(BigInt::one(), |acc, (v, &k)| {
                            if k == 0 {
                                acc
                            } else {
                                acc * BigInt::from(*v).pow(k)
                            }
                        })
                    })
                    .sum();
                let deg = mono.degree();
                let lhs = BigRational::new(lhs, BigInt::from(*den).pow(deg));
                let mu = sphere_moment(m, e);
                let rhs = if mu.is_zero() {
                    mu
                } else {
                    mu * BigRational::from_integer(n.into())
                        * num_traits::pow(r2.clone(), (deg / 2) as usize)
                };
                if lhs != rhs {
                    failures.push(e.to_vec());
                }
            }
        }
        PointSet::Exact { points, .. } => {
            for mono in &monomials {
                let e = mono.exponents();
                let mut lhs = Scalar::zero(f);
                for p in points {
                    let mut v = Scalar::one(f);
                    for (c, &k) in p.iter().zip(e) {
                        if k > 0 {
                            v *= &c.pow(k);
                        }
                    }
                    lhs += &v;
                }
                let mu = Scalar::from_rational(sphere_moment(m, e), f);
                let rhs = &(&mu * &Scalar::from_int(n, f)) * &x.r2.pow(mono.degree() / 2);
                if lhs != rhs {
                    failures.push(e.to_vec());
                }
            }
        }
    }
    Ok(MomentResult {
        t,
        monomials: monomials.len(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{build_e8, build_icosahedron};
    use crate::exact::Field;

    #[test]
    fn gegenbauer_low_orders() {
        let s = Scalar::fraction(1, 2, Field::Rational);
        let c = gegenbauer_values(3, 2, &s);
        // Legendre: P1 = s, P2 = (3 s^2 - 1)/2
        assert_eq!(c[1], s);
        assert_eq!(c[2], Scalar::fraction(-1, 8, Field::Rational));
        let t = gegenbauer_values(2, 2, &s);
        assert_eq!(t[2], Scalar::fraction(-1, 2, Field::Rational));
    }

    #[test]
    fn icosahedron_is_a_five_design() {
        let x = build_icosahedron();
        let r = design_strength_gegenbauer(&x, 6, DistributionMode::Full).unwrap();
        assert_eq!(r.first_failure, Some(6));
        assert!(design_strength_moments(&x, 5).unwrap().passed());
        assert!(!design_strength_moments(&x, 6).unwrap().passed());
    }

    #[test]
    fn e8_strength_seven() {
        let x = build_e8();
        assert_eq!(design_strength(&x, 8, DistributionMode::Full).unwrap(), 7);
        let r = design_strength_moments(&x, 7).unwrap();
        assert_eq!(r.monomials, 6435);
        assert!(r.passed());
    }
}
