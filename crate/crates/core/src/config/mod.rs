//! Point configurations: the Golay code, lattice shells (E8, E7, E6, Leech),
//! the small gallery examples, and lattice-level operations.

mod distribution;
mod gallery;
mod golay;
mod lattice;
mod lattices;
mod pointfile;

pub use distribution::{pair_distribution, DistributionMode, PairDistribution};
pub use gallery::{
    build_4cube, build_icosahedron, build_knn, build_ngon, default_ngon_parameters, golden_ratio,
    twenty_four_cell, twenty_four_cell_short,
};
pub use golay::{build_golay, BinaryCode};
pub use lattice::{
    basis_from_generators, enumerate_short_vectors, EnumerationResult, LatticeBasis,
};
pub use lattices::{build_e6, build_e7, build_e8, build_leech, leech_type, LeechBuild};
pub use pointfile::{read_points, write_points, PointFile};

use std::collections::HashSet;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::{ExactError, ExactMatrix, Field, FieldEchelon, IntEchelon, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("construction self-check failed: {0}")]
    Invariant(String),
    #[error("duplicate point at index {0}")]
    DuplicatePoint(usize),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("generating set has rank {0}, expected {1}")]
    RankDeficient(usize, usize),
    #[error("point file: {0}")]
    PointFile(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Storage for a point list.
///
/// `Integral` keeps `den * x` as machine integers (flat, row-major), which
/// covers every lattice configuration; `Exact` holds arbitrary scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSet {
    Integral {
        dim: usize,
        den: i64,
        data: Vec<i64>,
    },
    Exact {
        dim: usize,
        field: Field,
        points: Vec<Vec<Scalar>>,
    },
}

impl PointSet {
    pub fn len(&self) -> usize {
        match self {
            PointSet::Integral { dim, data, .. } => data.len() / dim,
            PointSet::Exact { points, .. } => points.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        match self {
            PointSet::Integral { dim, .. } | PointSet::Exact { dim, .. } => *dim,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            PointSet::Integral { .. } => Field::Rational,
            PointSet::Exact { field, .. } => *field,
        }
    }

    /// Common denominator of integral storage (1 for exact storage).
    pub fn den(&self) -> i64 {
        match self {
            PointSet::Integral { den, .. } => *den,
            PointSet::Exact { .. } => 1,
        }
    }

    /// `den * x_i` for integral storage.
    pub fn integral_row(&self, i: usize) -> Option<&[i64]> {
        match self {
            PointSet::Integral { dim, data, .. } => Some(&data[i * dim..(i + 1) * dim]),
            PointSet::Exact { .. } => None,
        }
    }

    pub fn point(&self, i: usize) -> Vec<Scalar> {
        match self {
            PointSet::Integral { den, .. } => self
                .integral_row(i)
                .unwrap()
                .iter()
                .map(|&v| Scalar::fraction(v, *den, Field::Rational))
                .collect(),
            PointSet::Exact { points, .. } => points[i].clone(),
        }
    }

    pub fn points(&self) -> Vec<Vec<Scalar>> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }

    pub fn inner(&self, i: usize, j: usize) -> Scalar {
        match self {
            PointSet::Integral { den, .. } => Scalar::fraction(
                self.inner_int(i, j).expect("integral"),
                den * den,
                Field::Rational,
            ),
            PointSet::Exact { points, .. } => dot(&points[i], &points[j]),
        }
    }

    /// Inner product of the stored integer rows (`den^2` times the true one).
    pub fn inner_int(&self, i: usize, j: usize) -> Option<i64> {
        let a = self.integral_row(i)?;
        let b = self.integral_row(j)?;
        Some(a.iter().zip(b).map(|(x, y)| x * y).sum())
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero(a[0].field());
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// A linear form `coeffs . Y - constant` vanishing on an embedded
/// configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    pub coeffs: Vec<Scalar>,
    pub constant: Scalar,
}

/// Finite point set on a sphere centred at the origin.
#[derive(Clone, Debug)]
pub struct SphericalConfiguration {
    pub name: String,
    pub points: PointSet,
    /// Common squared norm, equal to `omegas[0]`.
    pub r2: Scalar,
    /// Inner-product values, strictly descending.
    pub omegas: Vec<Scalar>,
    pub antipodal: bool,
    /// Linear forms vanishing on the points; non-empty exactly when the
    /// configuration does not span its ambient space.
    pub linear_forms: Vec<AffineForm>,
}

impl SphericalConfiguration {
    pub fn new(name: &str, points: PointSet, r2: Scalar, mut omegas: Vec<Scalar>) -> Self {
        omegas.sort_by(|a, b| b.cmp_value(a).expect("one field"));
        omegas.dedup();
        let mut c = SphericalConfiguration {
            name: name.to_string(),
            points,
            r2,
            omegas,
            antipodal: false,
            linear_forms: Vec::new(),
        };
        c.antipodal = c.check_antipodal();
        c
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }

    pub fn field(&self) -> Field {
        self.points.field()
    }

    pub fn is_embedded(&self) -> bool {
        !self.linear_forms.is_empty()
    }

    /// Number of distinct non-trivial inner products, `d` in `omega_0..omega_d`.
    pub fn degree_d(&self) -> usize {
        self.omegas.len() - 1
    }

    /// Interior inner products `omega_1..omega_{d-1}`.
    pub fn interior_omegas(&self) -> &[Scalar] {
        &self.omegas[1..self.omegas.len() - 1]
    }

    /// Index of the first point whose squared norm differs from `r2`.
    pub fn norm_violation(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.points.inner(i, i) != self.r2)
    }

    pub fn check_antipodal(&self) -> bool {
        match &self.points {
            PointSet::Integral { .. } => {
                let set: HashSet<&[i64]> = (0..self.len())
                    .map(|i| self.points.integral_row(i).unwrap())
                    .collect();
                (0..self.len()).all(|i| {
                    let neg: Vec<i64> = self
                        .points
                        .integral_row(i)
                        .unwrap()
                        .iter()
                        .map(|v| -v)
                        .collect();
                    set.contains(neg.as_slice())
                })
            }
            PointSet::Exact { points, .. } => {
                let set: HashSet<&Vec<Scalar>> = points.iter().collect();
                points
                    .iter()
                    .all(|p| set.contains(&p.iter().map(|v| -v).collect::<Vec<_>>()))
            }
        }
    }

    /// Index of the first repeated point, if any.
    pub fn duplicate(&self) -> Option<usize> {
        let mut seen = HashSet::new();
        (0..self.len()).find(|&i| !seen.insert(self.points.point(i)))
    }

    /// Rank of the point matrix.
    pub fn rank(&self) -> usize {
        match &self.points {
            PointSet::Integral { dim, .. } => {
                let mut e = IntEchelon::new(*dim);
                for i in 0..self.len() {
                    e.insert_i64(self.points.integral_row(i).unwrap());
                    if e.rank() == *dim {
                        break;
                    }
                }
                e.rank()
            }
            PointSet::Exact { dim, field, points } => {
                let mut e = FieldEchelon::new(*dim, *field);
                for p in points {
                    e.insert(p.clone()).expect("consistent field");
                    if e.rank() == *dim {
                        break;
                    }
                }
                e.rank()
            }
        }
    }

    /// True iff the points span the ambient space.
    pub fn spans(&self) -> bool {
        self.rank() == self.dim()
    }

    /// Position of a point in the list.
    pub fn index_of(&self, x: &[Scalar]) -> Option<usize> {
        (0..self.len()).find(|&i| self.points.point(i).as_slice() == x)
    }

    /// Antipodal representatives: points whose first nonzero coordinate is
    /// positive, in list order.
    pub fn antipodal_representatives(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| match &self.points {
                PointSet::Integral { .. } => self
                    .points
                    .integral_row(i)
                    .unwrap()
                    .iter()
                    .find(|v| **v != 0)
                    .is_some_and(|v| *v > 0),
                PointSet::Exact { points, .. } => points[i]
                    .iter()
                    .find(|v| !v.is_zero())
                    .is_some_and(Scalar::is_positive),
            })
            .collect()
    }

    /// Point matrix as an exact matrix.
    pub fn matrix(&self) -> ExactMatrix {
        ExactMatrix::from_rows(self.points.points(), self.field()).expect("consistent rows")
    }

    /// Integer rows `den * x` as big integers (integral storage only).
    pub fn integer_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        (0..self.len())
            .map(|i| {
                self.points
                    .integral_row(i)
                    .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            })
            .collect()
    }
}
