//! Shortest vectors of E8, E7, E6 and the Leech lattice.

use crate::exact::{Field, Scalar};

use super::{build_golay, AffineForm, ConfigError, PointSet, SphericalConfiguration};

fn rational_omegas(values: &[i64], den: i64) -> Vec<Scalar> {
    values
        .iter()
        .map(|&v| Scalar::fraction(v, den, Field::Rational))
        .collect()
}

fn e8_rows() -> Vec<[i64; 8]> {
    let mut rows = Vec::with_capacity(240);
    // (+-1, +-1, 0^6) in all positions, stored doubled
    for i in 0..8 {
        for j in i + 1..8 {
            for (si, sj) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                let mut v = [0i64; 8];
                v[i] = si;
                v[j] = sj;
                rows.push(v);
            }
        }
    }
    // (+-1/2)^8 with an even number of minus signs, stored doubled
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let mut v = [1i64; 8];
            for (k, x) in v.iter_mut().enumerate() {
                if mask >> k & 1 == 1 {
                    *x = -1;
                }
            }
            rows.push(v);
        }
    }
    rows
}

fn e8_from_rows(name: &str, rows: Vec<[i64; 8]>) -> SphericalConfiguration {
    let data = rows.into_iter().flatten().collect();
    SphericalConfiguration::new(
        name,
        PointSet::Integral {
            dim: 8,
            den: 2,
            data,
        },
        Scalar::from_int(2, Field::Rational),
        rational_omegas(&[2, 1, 0, -1, -2], 1),
    )
}

/// The 240 roots of E8: `(+-1, +-1, 0^6)` and `(+-1/2)^8` with an even
/// number of minus signs. Stored with denominator 2.
pub fn build_e8() -> SphericalConfiguration {
    e8_from_rows("e8", e8_rows())
}

fn difference_form(i: usize, j: usize) -> AffineForm {
    let f = Field::Rational;
    let mut coeffs = vec![Scalar::zero(f); 8];
    coeffs[i] = Scalar::one(f);
    coeffs[j] = Scalar::from_int(-1, f);
    AffineForm {
        coeffs,
        constant: Scalar::zero(f),
    }
}

/// E7 roots as the E8 roots with `a7 = a8`, in ambient coordinates.
pub fn build_e7() -> SphericalConfiguration {
    let rows = e8_rows().into_iter().filter(|v| v[6] == v[7]).collect();
    let mut c = e8_from_rows("e7", rows);
    c.linear_forms.push(difference_form(6, 7));
    c
}

/// E6 roots as the E8 roots with `a6 = a7 = a8`, in ambient coordinates.
pub fn build_e6() -> SphericalConfiguration {
    let rows = e8_rows()
        .into_iter()
        .filter(|v| v[5] == v[6] && v[6] == v[7])
        .collect();
    let mut c = e8_from_rows("e6", rows);
    c.linear_forms.push(difference_form(5, 6));
    c.linear_forms.push(difference_form(6, 7));
    c
}

/// Result of the Leech construction with its bookkeeping.
#[derive(Clone, Debug)]
pub struct LeechBuild {
    pub config: SphericalConfiguration,
    /// Counts of shapes `(+-2^8, 0^16)`, `(-+3, +-1^23)`, `(+-4^2, 0^22)`.
    pub type_counts: [usize; 3],
    /// Whether the alternative type-2 sign convention had to be used.
    pub flipped: bool,
}

/// Shape class 1, 2 or 3 of a Leech vector from its support size.
pub fn leech_type(v: &[i64]) -> u8 {
    match v.iter().filter(|x| **x != 0).count() {
        8 => 1,
        24 => 2,
        _ => 3,
    }
}

fn type2_vectors(codewords: &[u32], flip: bool) -> Vec<[i64; 24]> {
    let mut out = Vec::with_capacity(codewords.len() * 24);
    for &c in codewords {
        let mut base = [1i64; 24];
        for (i, b) in base.iter_mut().enumerate() {
            let on = c >> i & 1 == 1;
            if on != flip {
                *b = -1;
            }
        }
        for j in 0..24 {
            let mut v = base;
            v[j] *= -3;
            out.push(v);
        }
    }
    out
}

fn congruent_mod_8(type1: &[[i64; 24]], type2: &[[i64; 24]]) -> bool {
    type2.iter().take(256).all(|b| {
        type1.iter().all(|a| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x * y)
                .sum::<i64>()
                .rem_euclid(8)
                == 0
        })
    })
}

/// The 196560 minimal vectors of the Leech lattice scaled by `sqrt 8`
/// (squared norm 32), assembled from the Golay code.
pub fn build_leech() -> Result<LeechBuild, ConfigError> {
    let golay = build_golay()?;
    let octads: Vec<u32> = golay.words_of_weight(8).collect();
    let mut type1 = Vec::with_capacity(octads.len() * 128);
    for &c in &octads {
        let support: Vec<usize> = (0..24).filter(|i| c >> i & 1 == 1).collect();
        for mask in 0u32..256 {
            if mask.count_ones() % 2 != 0 {
                continue;
            }
            let mut v = [0i64; 24];
            for (k, &i) in support.iter().enumerate() {
                v[i] = if mask >> k & 1 == 1 { -2 } else { 2 };
            }
            type1.push(v);
        }
    }
    let mut flipped = false;
    let mut type2 = type2_vectors(&golay.codewords, false);
    if !congruent_mod_8(&type1, &type2) {
        flipped = true;
        type2 = type2_vectors(&golay.codewords, true);
        if !congruent_mod_8(&type1, &type2) {
            return Err(ConfigError::Invariant(
                "no type-2 sign convention is congruent mod 8".into(),
            ));
        }
    }
    let mut type3 = Vec::with_capacity(1104);
    for i in 0..24 {
        for j in i + 1..24 {
            for (si, sj) in [(4, 4), (4, -4), (-4, 4), (-4, -4)] {
                let mut v = [0i64; 24];
                v[i] = si;
                v[j] = sj;
                type3.push(v);
            }
        }
    }
    let type_counts = [type1.len(), type2.len(), type3.len()];
    let data: Vec<i64> = type1
        .iter()
        .chain(&type2)
        .chain(&type3)
        .flatten()
        .copied()
        .collect();
    let config = SphericalConfiguration::new(
        "leech",
        PointSet::Integral {
            dim: 24,
            den: 1,
            data,
        },
        Scalar::from_int(32, Field::Rational),
        rational_omegas(&[32, 16, 8, 0, -8, -16, -32], 1),
    );
    if let Some(i) = config.norm_violation() {
        return Err(ConfigError::Invariant(format!(
            "Leech vector {i} has the wrong norm"
        )));
    }
    Ok(LeechBuild {
        config,
        type_counts,
        flipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_series_counts() {
        let e8 = build_e8();
        assert_eq!(e8.len(), 240);
        assert!(e8.antipodal);
        assert_eq!(e8.norm_violation(), None);
        assert_eq!(
            (0..240)
                .filter(|&i| e8.points.integral_row(i).unwrap()[0].abs() == 1)
                .count(),
            128
        );
        assert_eq!(build_e7().len(), 126);
        assert_eq!(build_e6().len(), 72);
        let b = (0..240)
            .filter(|&i| {
                let r = e8.points.integral_row(i).unwrap();
                r[6] - r[7] == 2
            })
            .count();
        assert_eq!(b, 56);
    }
}
