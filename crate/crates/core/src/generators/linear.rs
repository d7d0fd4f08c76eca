use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::{Field, Scalar};
use crate::poly::{sphere_polynomial, SparsePoly};

use super::GeneratorError;

/// `coeffs . Y - constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: Vec<Scalar>,
    pub constant: Scalar,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Scalar>, constant: Scalar) -> Self {
        LinearForm { coeffs, constant }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn field(&self) -> Field {
        self.constant.field()
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        let mut acc = -&self.constant;
        for (c, v) in self.coeffs.iter().zip(x) {
            if !c.is_zero() && !v.is_zero() {
                acc += &(c * v);
            }
        }
        acc
    }

    pub fn to_poly(&self) -> SparsePoly {
        SparsePoly::linear(&self.coeffs, &self.constant)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn cast(&self, field: Field) -> Result<Self, GeneratorError> {
        Ok(LinearForm {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.cast(field))
                .collect::<Result<_, _>>()?,
            constant: self.constant.cast(field)?,
        })
    }
}

/// Which coordinate the complement rule pivots on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComplementRule {
    FirstNonzero,
    LastNonzero,
}

/// `m - 1` vectors spanning the orthogonal complement of `a`: with `p` the
/// pivot coordinate, `a_p e_i - a_i e_p` for every `i != p`.
pub fn orthogonal_complement_basis(
    a: &[Scalar],
    rule: ComplementRule,
) -> Result<Vec<Vec<Scalar>>, GeneratorError> {
    let nonzero = |v: &&Scalar| !v.is_zero();
    let p = match rule {
        ComplementRule::FirstNonzero => a.iter().position(|v| nonzero(&v)),
        ComplementRule::LastNonzero => a.iter().rposition(|v| nonzero(&v)),
    }
    .ok_or(GeneratorError::ZeroVector)?;
    let f = a[p].field();
    Ok((0..a.len())
        .filter(|&i| i != p)
        .map(|i| {
            let mut b = vec![Scalar::zero(f); a.len()];
            b[i] = a[p].clone();
            b[p] = -&a[i];
            b
        })
        .collect())
}

/// Integer version of [`orthogonal_complement_basis`].
pub fn orthogonal_complement_int(a: &[i64], rule: ComplementRule) -> Vec<Vec<i64>> {
    let p = match rule {
        ComplementRule::FirstNonzero => a.iter().position(|v| *v != 0),
        ComplementRule::LastNonzero => a.iter().rposition(|v| *v != 0),
    }
    .expect("nonzero vector");
    (0..a.len())
        .filter(|&i| i != p)
        .map(|i| {
            let mut b = vec![0; a.len()];
            b[i] = a[p];
            b[p] = -a[i];
            b
        })
        .collect()
}

/// Provenance of a generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    Nm,
    Zonal(usize),
    Sliced(usize, usize),
    Cubic(usize),
    Restricted(usize),
    LinearTrivial(usize),
    Edge(usize, usize),
    Chords(usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Nm => write!(f, "NM"),
            Label::Zonal(a) => write!(f, "ZONAL({a})"),
            Label::Sliced(a, i) => write!(f, "SLICED({a},{i})"),
            Label::Cubic(b) => write!(f, "CUBIC({b})"),
            Label::Restricted(i) => write!(f, "RESTRICTED({i})"),
            Label::LinearTrivial(i) => write!(f, "LINEAR_TRIVIAL({i})"),
            Label::Edge(i, j) => write!(f, "EDGE({i},{j})"),
            Label::Chords(i) => write!(f, "CHORDS({i})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorBody {
    /// `sum Y_i^2 - r2`.
    Sphere {
        nvars: usize,
        r2: Scalar,
    },
    /// Product of linear forms.
    Product(Vec<LinearForm>),
    Poly(SparsePoly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: Label,
    pub body: GeneratorBody,
}

impl Generator {
    pub fn sphere(nvars: usize, r2: Scalar) -> Self {
        Generator {
            label: Label::Nm,
            body: GeneratorBody::Sphere { nvars, r2 },
        }
    }

    pub fn product(label: Label, forms: Vec<LinearForm>) -> Self {
        Generator {
            label,
            body: GeneratorBody::Product(forms),
        }
    }

    pub fn degree(&self) -> u32 {
        match &self.body {
            GeneratorBody::Sphere { .. } => 2,
            GeneratorBody::Product(forms) => {
                forms.iter().filter(|l| !l.is_constant()).count() as u32
            }
            GeneratorBody::Poly(p) => p.degree().unwrap_or(0),
        }
    }

    pub fn to_poly(&self) -> SparsePoly {
        match &self.body {
            GeneratorBody::Sphere { nvars, r2 } => sphere_polynomial(*nvars, r2),
            GeneratorBody::Product(forms) => {
                let mut it = forms.iter();
                let first = it.next().expect("non-empty product").to_poly();
                it.fold(first, |acc, l| &acc * &l.to_poly())
            }
            GeneratorBody::Poly(p) => p.clone(),
        }
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        match &self.body {
            GeneratorBody::Sphere { r2, .. } => {
                let mut acc = -r2;
                for v in x {
                    acc += &(v * v);
                }
                acc
            }
            GeneratorBody::Product(forms) => {
                let mut acc = forms[0].eval(x);
                for l in &forms[1..] {
                    if acc.is_zero() {
                        break;
                    }
                    acc *= &l.eval(x);
                }
                acc
            }
            GeneratorBody::Poly(p) => p.eval(x).expect("arity checked by caller"),
        }
    }

    /// Gradient at a zero `x` without expanding the polynomial. For a
    /// product of linear forms exactly one of which vanishes at `x`, this is
    /// that form's coefficient vector times the product of the other values;
    /// with two or more vanishing factors it is zero.
    pub fn gradient_closed_form(&self, x: &[Scalar]) -> Result<Vec<Scalar>, GeneratorError> {
        match &self.body {
            GeneratorBody::Sphere { .. } => Ok(x.iter().map(|v| v + v).collect()),
            GeneratorBody::Product(forms) => {
                let values: Vec<Scalar> = forms.iter().map(|l| l.eval(x)).collect();
                let zeros: Vec<usize> =
                    (0..values.len()).filter(|&i| values[i].is_zero()).collect();
                let f = forms[0].field();
                match zeros.len() {
                    0 => Err(GeneratorError::NotAZero(self.label.to_string())),
                    1 => {
                        let k = zeros[0];
                        let mut factor = Scalar::one(f);
                        for (i, v) in values.iter().enumerate() {
                            if i != k {
                                factor *= v;
                            }
                        }
                        Ok(forms[k].coeffs.iter().map(|c| c * &factor).collect())
                    }
                    _ => Ok(vec![Scalar::zero(f); x.len()]),
                }
            }
            GeneratorBody::Poly(p) => Ok(gradient_symbolic(p, x)),
        }
    }

    /// Gradient by formal differentiation of the expanded polynomial.
    pub fn gradient_symbolic(&self, x: &[Scalar]) -> Vec<Scalar> {
        gradient_symbolic(&self.to_poly(), x)
    }
}

fn gradient_symbolic(p: &SparsePoly, x: &[Scalar]) -> Vec<Scalar> {
    p.gradient()
        .iter()
        .map(|d| d.eval(x).expect("arity"))
        .collect()
}

/// `prod (a . Y - root)`.
pub fn zonal(label: Label, a: &[Scalar], roots: &[Scalar]) -> Result<Generator, GeneratorError> {
    if roots.is_empty() {
        return Err(GeneratorError::EmptyRoots);
    }
    if a.iter().all(Scalar::is_zero) {
        return Err(GeneratorError::ZeroVector);
    }
    let forms = roots
        .iter()
        .map(|w| LinearForm::new(a.to_vec(), w.clone()))
        .collect();
    Ok(Generator::product(label, forms))
}

/// `(b . Y) prod (a . Y - w)` over the interior inner products `w`.
pub fn sliced_zonal(
    label: Label,
    a: &[Scalar],
    b: &[Scalar],
    interior: &[Scalar],
) -> Result<Generator, GeneratorError> {
    if b.iter().all(Scalar::is_zero) {
        return Err(GeneratorError::ZeroVector);
    }
    let ab = crate::config::dot(a, b);
    if !ab.is_zero() {
        return Err(GeneratorError::NotOrthogonal(ab.to_string()));
    }
    let f = a[0].field();
    let mut forms = vec![LinearForm::new(b.to_vec(), Scalar::zero(f))];
    forms.extend(
        interior
            .iter()
            .map(|w| LinearForm::new(a.to_vec(), w.clone())),
    );
    Ok(Generator::product(label, forms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Scalar> {
        v.iter()
            .map(|&x| Scalar::from_int(x, Field::Rational))
            .collect()
    }

    #[test]
    fn complement_of_basis_vector() {
        let b = orthogonal_complement_basis(&q(&[1, 0, 0]), ComplementRule::FirstNonzero).unwrap();
        assert_eq!(b, vec![q(&[0, 1, 0]), q(&[0, 0, 1])]);
        assert_eq!(
            orthogonal_complement_int(&[0, 2, 3], ComplementRule::FirstNonzero),
            vec![vec![2, 0, 0], vec![0, -3, 2]]
        );
    }

    #[test]
    fn zonal_of_unit_vector_at_zero() {
        let g = zonal(Label::Zonal(0), &q(&[1, 0]), &q(&[0])).unwrap();
        assert_eq!(g.to_poly().to_string(), "Y1");
        assert!(zonal(Label::Zonal(0), &q(&[1, 0]), &[]).is_err());
    }

    #[test]
    fn sliced_requires_orthogonality() {
        let a = q(&[1, 1]);
        assert!(matches!(
            sliced_zonal(Label::Sliced(0, 0), &a, &a, &q(&[0])),
            Err(GeneratorError::NotOrthogonal(_))
        ));
        let g = sliced_zonal(Label::Sliced(0, 0), &a, &q(&[1, -1]), &q(&[0])).unwrap();
        assert_eq!(g.degree(), 2);
    }
}
