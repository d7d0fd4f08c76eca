use crate::exact::{Field, Scalar};
use crate::poly::{parse_poly, SparsePoly};

use super::linear::{Generator, Label, LinearForm};
use super::GeneratorError;

/// Both sides of the expression of the quintic zonal polynomial at
/// `c = (1,1,0,...,0)` through four E7 cubics, after `Y8 := Y7`.
#[derive(Clone, Debug)]
pub struct E7IdentityWitness {
    pub zonal: SparsePoly,
    pub combination: SparsePoly,
    pub cubics: Vec<Generator>,
}

impl E7IdentityWitness {
    pub fn difference(&self) -> SparsePoly {
        &self.zonal - &self.combination
    }

    pub fn holds(&self) -> bool {
        self.difference().is_zero()
    }
}

const N: usize = 8;

fn p(text: &str) -> Result<SparsePoly, GeneratorError> {
    Ok(parse_poly(text, N, Field::Rational)?)
}

/// Product of the factors, each written as a linear polynomial.
fn product(coef: &str, factors: &[&str]) -> Result<SparsePoly, GeneratorError> {
    let mut acc = p(coef)?;
    for f in factors {
        acc = &acc * &p(f)?;
    }
    Ok(acc)
}

fn vector(v: &[i64]) -> Vec<Scalar> {
    v.iter()
        .map(|&x| Scalar::from_int(x, Field::Rational))
        .collect()
}

fn substitute_y8(poly: &SparsePoly) -> Result<SparsePoly, GeneratorError> {
    let mut images: Vec<SparsePoly> = (0..N)
        .map(|i| SparsePoly::var(i, N, Field::Rational))
        .collect();
    images[7] = SparsePoly::var(6, N, Field::Rational);
    Ok(poly.compose(&images)?)
}

pub fn build_e7_identity_witness() -> Result<E7IdentityWitness, GeneratorError> {
    let f = Field::Rational;
    let c = vector(&[1, 1, 0, 0, 0, 0, 0, 0]);
    let zonal = Generator::product(
        Label::Zonal(0),
        (-2..=2)
            .map(|h| LinearForm::new(c.clone(), Scalar::from_int(h, f)))
            .collect(),
    );
    let bs = [
        [1, 0, 0, 0, 0, 0, 1, 0],
        [0, 1, 0, 0, 0, 0, 1, 0],
        [-1, 0, 0, 0, 0, 0, 1, 0],
        [0, -1, 0, 0, 0, 0, 1, 0],
    ];
    let cubics: Vec<Generator> = bs
        .iter()
        .enumerate()
        .map(|(k, b)| {
            let b = vector(b);
            Generator::product(
                Label::Cubic(k),
                [1, 0, -1]
                    .iter()
                    .map(|&h| LinearForm::new(b.clone(), Scalar::from_int(h, f)))
                    .collect(),
            )
        })
        .collect();

    let q1 = product("1/2", &["Y1 + Y2 - 4*Y7", "Y1 + 4*Y2 + Y7"])?;
    let q2 = product("1/2", &["Y1 + Y2 - 4*Y7", "4*Y1 + Y2 + Y7"])?;
    let q3 = product("1/2", &["Y1 + Y2 + 4*Y7", "-Y1 - 4*Y2 + Y7"])?;
    let q4 = product("1/2", &["Y1 + Y2 + 4*Y7", "-4*Y1 - Y2 + Y7"])?;
    let r1 = p("3*Y2^2 + 5*Y7^2 - 2")?;
    let r2 = p("3*Y1^2 + 5*Y7^2 - 2")?;
    let multipliers = [&q1 + &r1, &q2 + &r2, &q3 - &r1, &q4 - &r2];

    let mut combination = SparsePoly::zero(N, f);
    for (m, cb) in multipliers.iter().zip(&cubics) {
        combination = &combination + &(m * &cb.to_poly());
    }
    Ok(E7IdentityWitness {
        zonal: substitute_y8(&zonal.to_poly())?,
        combination: substitute_y8(&combination)?,
        cubics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_holds() {
        let w = build_e7_identity_witness().unwrap();
        assert_eq!(w.zonal.degree(), Some(5));
        assert!(w.holds());
    }
}
