use crate::config::SphericalConfiguration;
use crate::exact::{Field, Scalar};

use super::linear::{orthogonal_complement_int, ComplementRule, Generator, Label, LinearForm};

/// Sliced zonal polynomials `S_{a,i}` of an integral antipodal
/// configuration, produced on demand from `(representative, i)`.
///
/// Representatives and complement vectors are kept as the stored integer
/// rows (`den * a`); integer evaluations are therefore positive multiples of
/// the true values and vanish exactly when the true values do.
#[derive(Clone, Debug)]
pub struct SlicedFamily {
    pub nvars: usize,
    pub den: i64,
    pub reps: Vec<Vec<i64>>,
    /// Index of each representative in the configuration.
    pub rep_index: Vec<usize>,
    /// Interior inner products in true units.
    pub interior: Vec<Scalar>,
    /// Interior inner products in stored units (`den^2 * w`).
    pub interior_data: Vec<i64>,
    pub rule: ComplementRule,
}

impl SlicedFamily {
    /// One representative per antipodal pair (first nonzero coordinate
    /// positive), ordered by support size and then by position.
    pub fn from_configuration(x: &SphericalConfiguration, rule: ComplementRule) -> Self {
        let den = x.points.den();
        let mut rep_index = x.antipodal_representatives();
        rep_index.sort_by_key(|&i| {
            (
                x.points
                    .integral_row(i)
                    .unwrap()
                    .iter()
                    .filter(|v| **v != 0)
                    .count(),
                i,
            )
        });
        let reps = rep_index
            .iter()
            .map(|&i| x.points.integral_row(i).unwrap().to_vec())
            .collect();
        let interior: Vec<Scalar> = x.interior_omegas().to_vec();
        let interior_data = interior
            .iter()
            .map(|w| {
                (w * &Scalar::from_int(den * den, Field::Rational))
                    .to_i64()
                    .expect("integral omega")
            })
            .collect();
        SlicedFamily {
            nvars: x.dim(),
            den,
            reps,
            rep_index,
            interior,
            interior_data,
            rule,
        }
    }

    pub fn per_rep(&self) -> usize {
        self.nvars - 1
    }

    pub fn len(&self) -> usize {
        self.reps.len() * self.per_rep()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.interior.len() as u32 + 1
    }

    pub fn complement(&self, r: usize) -> Vec<Vec<i64>> {
        orthogonal_complement_int(&self.reps[r], self.rule)
    }

    /// Exact generator `(b_i . Y) prod (a . Y - w)`.
    pub fn generator(&self, r: usize, i: usize) -> Generator {
        let f = Field::Rational;
        let b = &self.complement(r)[i];
        let a: Vec<Scalar> = self.reps[r]
            .iter()
            .map(|&v| Scalar::fraction(v, self.den, f))
            .collect();
        let mut forms = vec![LinearForm::new(
            b.iter().map(|&v| Scalar::from_int(v, f)).collect(),
            Scalar::zero(f),
        )];
        forms.extend(
            self.interior
                .iter()
                .map(|w| LinearForm::new(a.clone(), w.clone())),
        );
        Generator::product(Label::Sliced(self.rep_index[r], i), forms)
    }

    fn pivot(&self, r: usize) -> usize {
        let a = &self.reps[r];
        match self.rule {
            ComplementRule::FirstNonzero => a.iter().position(|v| *v != 0),
            ComplementRule::LastNonzero => a.iter().rposition(|v| *v != 0),
        }
        .expect("nonzero representative")
    }

    /// Index `i` of the first `S_{a,i}` that does not vanish at the stored
    /// point `x`, without building the complement vectors.
    pub fn first_nonvanishing(&self, r: usize, x: &[i64]) -> Option<usize> {
        if self.zonal_part(r, x).1 == 0 {
            return None;
        }
        let a = &self.reps[r];
        let p = self.pivot(r);
        (0..self.nvars)
            .filter(|&i| i != p)
            .position(|i| a[p] * x[i] - a[i] * x[p] != 0)
    }

    /// `prod (a . x - w)` in stored units for a stored point `x`.
    pub fn zonal_part(&self, r: usize, x: &[i64]) -> (i64, i128) {
        let s: i64 = self.reps[r].iter().zip(x).map(|(a, b)| a * b).sum();
        let p = self
            .interior_data
            .iter()
            .fold(1i128, |acc, w| acc * i128::from(s - w));
        (s, p)
    }

    /// Integer value of `S_{a,i}` at stored point `x` (a positive multiple
    /// of the true value).
    pub fn eval_int(&self, r: usize, b: &[i64], x: &[i64]) -> i128 {
        let bx: i64 = b.iter().zip(x).map(|(u, v)| u * v).sum();
        i128::from(bx) * self.zonal_part(r, x).1
    }

    /// Closed-form gradient row of `S_{a,i}` at a zero `x` (stored units).
    /// Exactly one factor vanishes when `a . x` is interior and `b . x != 0`;
    /// the row is then that factor's coefficients times the other values.
    pub fn gradient_int(&self, r: usize, b: &[i64], x: &[i64]) -> Vec<i128> {
        let a = &self.reps[r];
        let bx = i128::from(b.iter().zip(x).map(|(u, v)| u * v).sum::<i64>());
        let s: i64 = a.iter().zip(x).map(|(u, v)| u * v).sum();
        let mut values: Vec<i128> = vec![bx];
        values.extend(self.interior_data.iter().map(|w| i128::from(s - w)));
        let coeffs = |k: usize| -> &[i64] {
            if k == 0 {
                b
            } else {
                a
            }
        };
        let zeros: Vec<usize> = (0..values.len()).filter(|&k| values[k] == 0).collect();
        let mut row = vec![0i128; self.nvars];
        if zeros.len() == 1 {
            let k = zeros[0];
            let factor: i128 = values
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, v)| *v)
                .product();
            for (o, c) in row.iter_mut().zip(coeffs(k)) {
                *o = i128::from(*c) * factor;
            }
        } else if zeros.is_empty() {
            for k in 0..values.len() {
                let factor: i128 = values
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != k)
                    .map(|(_, v)| *v)
                    .product();
                for (o, c) in row.iter_mut().zip(coeffs(k)) {
                    *o += i128::from(*c) * factor;
                }
            }
        }
        row
    }
}
