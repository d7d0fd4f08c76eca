use num_rational::BigRational;

use crate::config::{PointSet, SphericalConfiguration};
use crate::exact::{ExactMatrix, Field, Scalar};
use crate::poly::{sphere_polynomial, SparsePoly};

use super::linear::{Generator, GeneratorBody, Label, LinearForm};
use super::{GeneratorError, GeneratorSet};

/// Affine change of coordinates `Y = C Y' + d` whose first `k` new
/// coordinates parametrise a subspace (the section is `Y'_{k+1} = ... = 0`).
#[derive(Clone, Debug)]
pub struct DerivedSection {
    pub c: ExactMatrix,
    pub d: Vec<Scalar>,
    pub k: usize,
    c_inv: ExactMatrix,
}

impl DerivedSection {
    pub fn new(c: ExactMatrix, d: Vec<Scalar>, k: usize) -> Result<Self, GeneratorError> {
        let c_inv = c.inverse().map_err(|_| GeneratorError::SingularSection)?;
        Ok(DerivedSection { c, d, k, c_inv })
    }

    pub fn identity(m: usize, field: Field) -> Self {
        let c = ExactMatrix::identity(m, field);
        DerivedSection {
            c_inv: c.clone(),
            c,
            d: vec![Scalar::zero(field); m],
            k: m,
        }
    }

    pub fn field(&self) -> Field {
        self.c.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.c.rows()
    }

    fn from_columns(
        ambient: usize,
        f: Field,
        cols: &[(usize, Vec<(usize, Scalar)>)],
    ) -> ExactMatrix {
        let mut c = ExactMatrix::zeros(ambient, ambient, f);
        for (col, entries) in cols {
            for (row, v) in entries {
                c.set(*row, *col, v.clone());
            }
        }
        c
    }

    /// `Y'_7 = (Y_7 + Y_8)/sqrt 2`, `Y'_8 = (Y_8 - Y_7)/sqrt 2`, others
    /// unchanged: an isometry of `R^8` whose first seven coordinates cover
    /// the hyperplane `Y_7 = Y_8`.
    pub fn e7() -> Self {
        let f = Field::Quadratic(2);
        let h = Scalar::quadratic(
            BigRational::from_integer(0.into()),
            BigRational::new(1.into(), 2.into()),
            2,
        )
        .expect("supported"); // 1/sqrt 2
        let mut cols: Vec<(usize, Vec<(usize, Scalar)>)> =
            (0..6).map(|i| (i, vec![(i, Scalar::one(f))])).collect();
        cols.push((6, vec![(6, h.clone()), (7, h.clone())]));
        cols.push((7, vec![(6, -&h), (7, h)]));
        let c = Self::from_columns(8, f, &cols);
        Self::new(c, vec![Scalar::zero(f); 8], 7).expect("invertible")
    }

    /// `Y'_6 = (Y_6 + Y_7 + Y_8)/sqrt 3` with completion columns `e7 - e6`
    /// and `e8 - e6`; first six coordinates cover `Y_6 = Y_7 = Y_8`.
    pub fn e6() -> Self {
        let f = Field::Quadratic(3);
        let t = Scalar::quadratic(
            BigRational::from_integer(0.into()),
            BigRational::new(1.into(), 3.into()),
            3,
        )
        .expect("supported"); // 1/sqrt 3
        let one = Scalar::one(f);
        let mut cols: Vec<(usize, Vec<(usize, Scalar)>)> =
            (0..5).map(|i| (i, vec![(i, one.clone())])).collect();
        cols.push((5, vec![(5, t.clone()), (6, t.clone()), (7, t)]));
        cols.push((6, vec![(5, -&one), (6, one.clone())]));
        cols.push((7, vec![(5, -&one), (7, one.clone())]));
        let c = Self::from_columns(8, f, &cols);
        Self::new(c, vec![Scalar::zero(f); 8], 6).expect("invertible")
    }

    /// Section coordinates of an ambient point lying on the section.
    pub fn map_point(&self, y: &[Scalar]) -> Result<Vec<Scalar>, GeneratorError> {
        let f = self.field();
        let shifted: Vec<Scalar> = y
            .iter()
            .zip(&self.d)
            .map(|(a, b)| Ok(a.cast(f)?.checked_sub(b)?))
            .collect::<Result<_, GeneratorError>>()?;
        let z = self.c_inv.mul_vec(&shifted)?;
        if z[self.k..].iter().any(|v| !v.is_zero()) {
            return Err(GeneratorError::OffSection);
        }
        Ok(z[..self.k].to_vec())
    }

    pub fn restrict_form(&self, l: &LinearForm) -> Result<LinearForm, GeneratorError> {
        let l = l.cast(self.field())?;
        let coeffs = (0..self.k)
            .map(|col| {
                let mut acc = Scalar::zero(self.field());
                for (j, cj) in l.coeffs.iter().enumerate() {
                    acc += &(cj * self.c.get(j, col));
                }
                acc
            })
            .collect();
        let shift = l.eval(&self.d) + &l.constant; // coeffs . d
        Ok(LinearForm::new(coeffs, &l.constant - &shift))
    }

    pub fn restrict_poly(&self, p: &SparsePoly) -> Result<SparsePoly, GeneratorError> {
        let f = self.field();
        let p = p.cast(f)?;
        let images: Vec<SparsePoly> = (0..self.ambient_dim())
            .map(|j| {
                let coeffs: Vec<Scalar> =
                    (0..self.k).map(|col| self.c.get(j, col).clone()).collect();
                SparsePoly::linear(&coeffs, &-&self.d[j])
            })
            .collect();
        Ok(p.compose(&images)?)
    }

    pub fn restrict_generator(
        &self,
        g: &Generator,
        index: usize,
    ) -> Result<Generator, GeneratorError> {
        let label = if g.label == Label::Nm {
            Label::Nm
        } else {
            Label::Restricted(index)
        };
        let body = match &g.body {
            GeneratorBody::Product(forms) => GeneratorBody::Product(
                forms
                    .iter()
                    .map(|l| self.restrict_form(l))
                    .collect::<Result<_, _>>()?,
            ),
            GeneratorBody::Sphere { r2, .. } => {
                let restricted = self.restrict_poly(&g.to_poly())?;
                let r2 = r2.cast(self.field())?;
                if restricted == sphere_polynomial(self.k, &r2) {
                    GeneratorBody::Sphere { nvars: self.k, r2 }
                } else {
                    GeneratorBody::Poly(restricted)
                }
            }
            GeneratorBody::Poly(p) => GeneratorBody::Poly(self.restrict_poly(p)?),
        };
        Ok(Generator { label, body })
    }

    /// Restriction of every generator (families are materialised).
    pub fn restrict_set(
        &self,
        g: &GeneratorSet,
        name: &str,
    ) -> Result<GeneratorSet, GeneratorError> {
        let explicit = g
            .iter()
            .enumerate()
            .map(|(i, gen)| self.restrict_generator(&gen, i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GeneratorSet::explicit(name, self.k, self.field(), explicit))
    }

    /// The configuration in section coordinates.
    pub fn apply(
        &self,
        x: &SphericalConfiguration,
        name: &str,
    ) -> Result<SphericalConfiguration, GeneratorError> {
        let f = self.field();
        let points = x
            .points
            .points()
            .iter()
            .map(|p| self.map_point(p))
            .collect::<Result<Vec<_>, _>>()?;
        let r2 = x.r2.cast(f)?;
        let omegas = x
            .omegas
            .iter()
            .map(|w| w.cast(f))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SphericalConfiguration::new(
            name,
            PointSet::Exact {
                dim: self.k,
                field: f,
                points,
            },
            r2,
            omegas,
        ))
    }
}
