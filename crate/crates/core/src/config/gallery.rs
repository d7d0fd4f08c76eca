//! Small configurations: icosahedron, polygons, the 4-cube and K_{n,n}.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{Field, Scalar};

use super::{dot, AffineForm, ConfigError, PointSet, SphericalConfiguration};

/// `(1 + sqrt 5) / 2`.
pub fn golden_ratio() -> Scalar {
    Scalar::quadratic(
        BigRational::new(1.into(), 2.into()),
        BigRational::new(1.into(), 2.into()),
        5,
    )
    .expect("5 is supported")
}

fn icosahedron_points() -> Vec<Vec<Scalar>> {
    let f = Field::Quadratic(5);
    let phi = golden_ratio();
    let mut pts = Vec::with_capacity(12);
    for shift in 0..3 {
        for (s1, s2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let base = [
                Scalar::from_int(s1, f),
                &phi * &Scalar::from_int(s2, f),
                Scalar::zero(f),
            ];
            let mut p = vec![Scalar::zero(f); 3];
            for (k, v) in base.into_iter().enumerate() {
                p[(k + shift) % 3] = v;
            }
            pts.push(p);
        }
    }
    pts
}

/// The 12 vertices `(+-1, +-phi, 0)` and cyclic shifts, over `Q(sqrt 5)`;
/// squared norm `2 + phi`.
pub fn build_icosahedron() -> SphericalConfiguration {
    let f = Field::Quadratic(5);
    let phi = golden_ratio();
    let r2 = &Scalar::from_int(2, f) + &phi;
    let omegas = vec![r2.clone(), phi.clone(), -&phi, -&r2];
    SphericalConfiguration::new(
        "icosahedron",
        PointSet::Exact {
            dim: 3,
            field: f,
            points: icosahedron_points(),
        },
        r2,
        omegas,
    )
}

/// Adjacency of the icosahedron's vertex graph in the order used by
/// [`build_icosahedron`]: neighbours have inner product `phi`.
pub fn icosahedron_adjacency() -> Vec<Vec<bool>> {
    let pts = icosahedron_points();
    let phi = golden_ratio();
    pts.iter()
        .map(|a| pts.iter().map(|b| dot(a, b) == phi).collect())
        .collect()
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Default polygon parameters: distinct rationals with no accidental
/// symmetry between the resulting points.
pub fn default_ngon_parameters(n: usize) -> Vec<BigRational> {
    let pool = [
        rational(0, 1),
        rational(1, 2),
        rational(3, 1),
        rational(-2, 1),
        rational(1, 3),
        rational(-5, 2),
        rational(4, 1),
        rational(-3, 4),
        rational(2, 5),
        rational(-7, 1),
        rational(5, 3),
        rational(-1, 5),
    ];
    if n <= pool.len() {
        pool[..n].to_vec()
    } else {
        (0..n as i64).map(|k| rational(2 * k + 1, k + 2)).collect()
    }
}

/// `n` rational points `((1-t^2)/(1+t^2), 2t/(1+t^2))` on the unit circle.
pub fn build_ngon(n: usize, params: &[BigRational]) -> Result<SphericalConfiguration, ConfigError> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(ConfigError::Parameter(format!(
            "polygon size must be even and at least 4, got {n}"
        )));
    }
    if params.len() != n {
        return Err(ConfigError::Parameter(format!(
            "expected {n} parameters, got {}",
            params.len()
        )));
    }
    let f = Field::Rational;
    let points: Vec<Vec<Scalar>> = params
        .iter()
        .map(|t| {
            let t2 = t * t;
            let den = &t2 + BigRational::one();
            vec![
                Scalar::from_rational((BigRational::one() - &t2) / &den, f),
                Scalar::from_rational((t + t) / &den, f),
            ]
        })
        .collect();
    let mut seen = BTreeSet::new();
    for (i, t) in params.iter().enumerate() {
        if !seen.insert(t.clone()) {
            return Err(ConfigError::DuplicatePoint(i));
        }
    }
    let mut omegas: Vec<Scalar> = Vec::new();
    for a in &points {
        for b in &points {
            let v = dot(a, b);
            if !omegas.contains(&v) {
                omegas.push(v);
            }
        }
    }
    let name = format!("ngon{n}");
    Ok(SphericalConfiguration::new(
        &name,
        PointSet::Exact {
            dim: 2,
            field: f,
            points,
        },
        Scalar::one(f),
        omegas,
    ))
}

/// The 16 vertices `(+-1)^4`, squared norm 4.
pub fn build_4cube() -> SphericalConfiguration {
    let mut data = Vec::with_capacity(64);
    for mask in 0..16u32 {
        for k in 0..4 {
            data.push(if mask >> (3 - k) & 1 == 1 { -1 } else { 1 });
        }
    }
    let omegas = [4, 2, 0, -2, -4]
        .iter()
        .map(|&v| Scalar::from_int(v, Field::Rational))
        .collect();
    SphericalConfiguration::new(
        "cube4",
        PointSet::Integral {
            dim: 4,
            den: 1,
            data,
        },
        Scalar::from_int(4, Field::Rational),
        omegas,
    )
}

/// The 24 vertices of the 24-cell through the cube's vertices: `(+-1)^4`
/// together with `+-2 e_i`.
pub fn twenty_four_cell() -> Vec<Vec<i64>> {
    let cube = build_4cube();
    let mut out: Vec<Vec<i64>> = (0..16)
        .map(|i| cube.points.integral_row(i).unwrap().to_vec())
        .collect();
    for i in 0..4 {
        for s in [2, -2] {
            let mut v = vec![0; 4];
            v[i] = s;
            out.push(v);
        }
    }
    out
}

/// The 24 permutations of `(+-1, +-1, 0, 0)`: the 24-cell whose vertices
/// have inner products `0, +-2` with every cube vertex.
pub fn twenty_four_cell_short() -> Vec<Vec<i64>> {
    let mut out = Vec::with_capacity(24);
    for i in 0..4 {
        for j in i + 1..4 {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0; 4];
                v[i] = si;
                v[j] = sj;
                out.push(v);
            }
        }
    }
    out
}

/// `K_{n,n}` as `2n` points in `R^{2n}`: `sqrt 2 (e_i - 1/n)` in each block,
/// over `Q(sqrt 2)`. Inner products `2 - 2/n`, `0`, `-2/n`; the two block
/// sums are recorded as linear trivial forms.
pub fn build_knn(n: usize) -> Result<SphericalConfiguration, ConfigError> {
    if n < 2 {
        return Err(ConfigError::Parameter(format!(
            "K_(n,n) needs n >= 2, got {n}"
        )));
    }
    let f = Field::Quadratic(2);
    let sqrt2 = Scalar::sqrt_of_radicand(f)?;
    let ni = n as i64;
    let mut points = Vec::with_capacity(2 * n);
    for block in 0..2 {
        for i in 0..n {
            let mut p = vec![Scalar::zero(f); 2 * n];
            for j in 0..n {
                let v = if i == j {
                    rational(ni - 1, ni)
                } else {
                    rational(-1, ni)
                };
                p[block * n + j] = &sqrt2 * &Scalar::from_rational(v, f);
            }
            points.push(p);
        }
    }
    let r2 = Scalar::from_rational(rational(2 * ni - 2, ni), f);
    let omegas = vec![
        r2.clone(),
        Scalar::zero(f),
        Scalar::from_rational(rational(-2, ni), f),
    ];
    let mut c = SphericalConfiguration::new(
        &format!("knn{n}"),
        PointSet::Exact {
            dim: 2 * n,
            field: f,
            points,
        },
        r2,
        omegas,
    );
    for block in 0..2 {
        let coeffs = (0..2 * n)
            .map(|j| {
                if j / n == block {
                    Scalar::one(f)
                } else {
                    Scalar::zero(f)
                }
            })
            .collect();
        c.linear_forms.push(AffineForm {
            coeffs,
            constant: Scalar::zero(f),
        });
    }
    debug_assert!(BigRational::zero() < rational(1, ni));
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosahedron_basics() {
        let x = build_icosahedron();
        assert_eq!(x.len(), 12);
        assert!(x.antipodal);
        assert_eq!(x.norm_violation(), None);
        let adj = icosahedron_adjacency();
        assert!(adj
            .iter()
            .all(|row| row.iter().filter(|b| **b).count() == 5));
    }

    #[test]
    fn knn_inner_products() {
        let x = build_knn(2).unwrap();
        let f = Field::Quadratic(2);
        let vals: Vec<Scalar> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| x.points.inner(i, j))
            .collect();
        for v in [1, 0, -1] {
            assert!(vals.contains(&Scalar::from_int(v, f)));
        }
        assert_eq!(x.omegas.len(), 3);
    }

    #[test]
    fn ngon_rejects_duplicates() {
        let p = vec![
            rational(0, 1),
            rational(1, 1),
            rational(1, 1),
            rational(3, 1),
        ];
        assert!(matches!(
            build_ngon(4, &p),
            Err(ConfigError::DuplicatePoint(2))
        ));
        assert!(build_ngon(5, &default_ngon_parameters(5)).is_err());
    }

    #[test]
    fn cube_and_cell() {
        let c = build_4cube();
        assert_eq!(c.len(), 16);
        assert_eq!(twenty_four_cell().len(), 24);
        assert!(twenty_four_cell()
            .iter()
            .all(|v| v.iter().map(|x| x * x).sum::<i64>() == 4));
    }
}
