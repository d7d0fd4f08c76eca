use rayon::prelude::*;

use crate::config::{DistributionMode, PointSet, SphericalConfiguration};
use crate::exact::{FieldEchelon, Scalar};
use crate::generators::{Generator, GeneratorSet, SlicedFamily};
use crate::sampling::sample_indices;

use super::VerifyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobianMethod {
    /// Expand each generator and differentiate formally.
    Symbolic,
    /// Product-rule row at a zero, without expansion.
    ClosedForm,
}

fn row(gen: &Generator, x: &[Scalar], method: JacobianMethod) -> Result<Vec<Scalar>, VerifyError> {
    Ok(match method {
        JacobianMethod::ClosedForm => gen.gradient_closed_form(x)?,
        JacobianMethod::Symbolic => gen.gradient_symbolic(x),
    })
}

/// Rank of the Jacobian of `g` at the zero `x`. Generators are consumed in
/// order and the scan stops once the rank reaches the number of variables.
/// Returns the rank and the indices of the generators whose rows raised it.
pub fn jacobian_rank_at(
    g: &GeneratorSet,
    x: &[Scalar],
    method: JacobianMethod,
) -> Result<(usize, Vec<usize>), VerifyError> {
    let field = x.first().map_or(g.field, Scalar::field);
    let mut ech = FieldEchelon::new(g.nvars, field);
    let mut used = Vec::new();
    for (k, gen) in g.iter().enumerate() {
        if ech.insert(row(&gen, x, method)?)? {
            used.push(k);
            if ech.rank() == g.nvars {
                break;
            }
        }
    }
    Ok((ech.rank(), used))
}

/// Checks that both methods give identical rows on the generators selected
/// by the closed form, and equal full ranks.
pub fn jacobian_agreement(g: &GeneratorSet, x: &[Scalar]) -> Result<bool, VerifyError> {
    let (rank_closed, used) = jacobian_rank_at(g, x, JacobianMethod::ClosedForm)?;
    for &k in &used {
        let gen = g.get(k);
        if row(&gen, x, JacobianMethod::ClosedForm)? != row(&gen, x, JacobianMethod::Symbolic)? {
            return Ok(false);
        }
    }
    let (rank_symbolic, _) = jacobian_rank_at(g, x, JacobianMethod::Symbolic)?;
    Ok(rank_closed == rank_symbolic)
}

#[derive(Clone, Debug)]
pub struct JacobianPass {
    pub mode: DistributionMode,
    pub points_checked: usize,
    pub min_rank: usize,
    /// First point whose rank falls short of the dimension.
    pub deficient: Option<usize>,
}

impl JacobianPass {
    pub fn passed(&self, dim: usize) -> bool {
        self.deficient.is_none() && self.min_rank == dim
    }
}

fn selected_points(x: &SphericalConfiguration, mode: DistributionMode) -> Vec<usize> {
    match mode {
        DistributionMode::Full => (0..x.len()).collect(),
        DistributionMode::Sampled { seed, count } => sample_indices(x.len(), count, seed),
    }
}

/// Exact Jacobian rank at every selected point (closed-form rows).
pub fn jacobian_rank_pass(
    x: &SphericalConfiguration,
    g: &GeneratorSet,
    mode: DistributionMode,
) -> Result<JacobianPass, VerifyError> {
    let points = selected_points(x, mode);
    let ranks = points
        .par_iter()
        .map(|&i| {
            jacobian_rank_at(g, &x.points.point(i), JacobianMethod::ClosedForm).map(|(r, _)| r)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(summarise(mode, &points, &ranks, g.nvars))
}

fn summarise(
    mode: DistributionMode,
    points: &[usize],
    ranks: &[usize],
    dim: usize,
) -> JacobianPass {
    let deficient = points
        .iter()
        .zip(ranks)
        .find(|(_, r)| **r < dim)
        .map(|(i, _)| *i);
    JacobianPass {
        mode,
        points_checked: points.len(),
        min_rank: ranks.iter().copied().min().unwrap_or(0),
        deficient,
    }
}

const P: u64 = (1 << 61) - 1;

fn reduce(v: i128) -> u64 {
    v.rem_euclid(P as i128) as u64
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, P - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

/// Row echelon form over `GF(2^61 - 1)`. A rank found here is a lower
/// bound for the rank over `Q` of the integer rows that were reduced.
struct ModEchelon {
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        for (p, r) in &self.rows {
            let f = v[*p];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(r).skip(*p) {
                    *x = (*x + P - mul_mod(f, *y)) % P;
                }
            }
        }
        let Some(p) = v.iter().position(|x| *x != 0) else {
            return false;
        };
        let inv = inv_mod(v[p]);
        v.iter_mut().skip(p).for_each(|x| *x = mul_mod(*x, inv));
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }
}

fn family_rank_at(nm_row: Vec<i128>, fam: &SlicedFamily, x: &[i64]) -> usize {
    let m = fam.nvars;
    let mut ech = ModEchelon {
        rows: Vec::with_capacity(m),
    };
    ech.insert(nm_row.into_iter().map(reduce).collect());
    for r in 0..fam.reps.len() {
        if ech.rows.len() == m {
            break;
        }
        if fam.zonal_part(r, x).1 == 0 {
            // Interior inner product: every nonzero row is a multiple of a,
            // so one `i` with b_i . x != 0 is enough.
            let comp = fam.complement(r);
            if let Some(b) = comp
                .iter()
                .find(|b| b.iter().zip(x).map(|(u, v)| u * v).sum::<i64>() != 0)
            {
                ech.insert(fam.gradient_int(r, b, x).into_iter().map(reduce).collect());
            }
        } else {
            for b in fam.complement(r) {
                ech.insert(fam.gradient_int(r, &b, x).into_iter().map(reduce).collect());
            }
        }
    }
    ech.rows.len()
}

/// Jacobian rank of `Nm` plus a streamed sliced family at every selected
/// point, from closed-form integer rows reduced modulo `2^61 - 1`. Rank `m`
/// modulo the prime certifies rank `m` over `Q`.
pub fn family_jacobian_pass(
    x: &SphericalConfiguration,
    g: &GeneratorSet,
    mode: DistributionMode,
) -> Result<JacobianPass, VerifyError> {
    let fam = g
        .family
        .as_ref()
        .ok_or_else(|| VerifyError::Prerequisite("generator set has no family".into()))?;
    if !matches!(x.points, PointSet::Integral { .. }) {
        return Err(VerifyError::Prerequisite(
            "integral coordinates required".into(),
        ));
    }
    let points = selected_points(x, mode);
    let ranks: Vec<usize> = points
        .par_iter()
        .map(|&i| {
            let row = x.points.integral_row(i).unwrap();
            let nm = row.iter().map(|&v| 2 * i128::from(v)).collect();
            family_rank_at(nm, fam, row)
        })
        .collect();
    Ok(summarise(mode, &points, &ranks, g.nvars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{build_e8, build_icosahedron};
    use crate::generators::{explicit_sliced_set, lattice_sliced_set, ComplementRule};

    #[test]
    fn icosahedron_full_rank_both_ways() {
        let x = build_icosahedron();
        let g = explicit_sliced_set(&x, ComplementRule::FirstNonzero).unwrap();
        for i in 0..x.len() {
            let p = x.points.point(i);
            assert_eq!(
                jacobian_rank_at(&g, &p, JacobianMethod::Symbolic)
                    .unwrap()
                    .0,
                3
            );
            assert!(jacobian_agreement(&g, &p).unwrap());
        }
    }

    #[test]
    fn e8_modular_pass_matches_exact() {
        let x = build_e8();
        let g = lattice_sliced_set(&x, ComplementRule::FirstNonzero).unwrap();
        let exact =
            jacobian_rank_pass(&x, &g, DistributionMode::Sampled { seed: 5, count: 12 }).unwrap();
        let modular = family_jacobian_pass(&x, &g, DistributionMode::Full).unwrap();
        assert!(exact.passed(8));
        assert!(modular.passed(8));
    }

    #[test]
    fn sphere_alone_is_deficient() {
        let x = build_icosahedron();
        let g =
            GeneratorSet::explicit("nm", 3, x.field(), vec![Generator::sphere(3, x.r2.clone())]);
        let pass = jacobian_rank_pass(&x, &g, DistributionMode::Full).unwrap();
        assert!(!pass.passed(3));
        assert_eq!(pass.min_rank, 1);
        assert_eq!(pass.deficient, Some(0));
    }
}
