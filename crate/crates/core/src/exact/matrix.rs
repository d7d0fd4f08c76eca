use std::fmt;

use num_bigint::BigInt;

use super::{ExactError, Field, Scalar};

/// Dense row-major matrix of exact scalars sharing one field.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        ExactMatrix {
            rows,
            cols,
            field,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one(field);
        }
        m
    }

    /// Builds a matrix from rows; every entry must carry `field`.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, field: Field) -> Result<Self, ExactError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(ExactError::Dimension(format!(
                    "ragged rows: {} vs {ncols}",
                    row.len()
                )));
            }
            for x in row {
                if x.field() != field {
                    return Err(ExactError::FieldMismatch(x.field(), field));
                }
                data.push(x);
            }
        }
        Ok(ExactMatrix {
            rows: nrows,
            cols: ncols,
            field,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let field = Field::Rational;
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x, field)).collect())
            .collect();
        Self::from_rows(rows, field).expect("integer rows are well formed")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "matrix entry field mismatch");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(ExactError::FieldMismatch(self.field, other.field));
        }
        let mut out = Self::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::Dimension(format!(
                "{} columns vs vector of {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.field);
                for (a, b) in self.row(i).iter().zip(v) {
                    acc += &a.checked_mul(b).expect("field checked");
                }
                acc
            })
            .collect())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Rank by fraction-free (Bareiss) elimination; pivots are the first
    /// nonzero entry in column order.
    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        bareiss_eliminate(&mut a, self.rows, self.cols, self.field).rank
    }

    /// Determinant by Bareiss elimination.
    pub fn det(&self) -> Result<Scalar, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare(self.rows, self.cols));
        }
        if self.rows == 0 {
            return Ok(Scalar::one(self.field));
        }
        let mut a = self.data.clone();
        let outcome = bareiss_eliminate(&mut a, self.rows, self.cols, self.field);
        if outcome.rank < self.rows {
            return Ok(Scalar::zero(self.field));
        }
        let n = self.rows;
        let last = a[(n - 1) * n + (n - 1)].clone();
        Ok(if outcome.swaps % 2 == 1 { -last } else { last })
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.data[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let sub = &factor * m.get(r, j);
                    m.data[i * m.cols + j] -= &sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of the right kernel `{x : M x = 0}`, one vector per free column.
    pub fn nullspace_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(self.field); self.cols];
                v[f] = Scalar::one(self.field);
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n, self.field);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.data[i * 2 * n + n + i] = Scalar::one(self.field);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(ExactError::Singular);
        }
        let mut inv = Self::zeros(n, n, self.field);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = r.get(i, n + j).clone();
            }
        }
        Ok(inv)
    }

    /// `G = L D L^T` with `L` unit lower triangular and `D` positive diagonal.
    pub fn ldlt(&self) -> Result<(Self, Vec<Scalar>), ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare(self.rows, self.cols));
        }
        if !self.is_symmetric() {
            return Err(ExactError::NotSymmetric);
        }
        let n = self.rows;
        let mut l = Self::identity(n, self.field);
        let mut d: Vec<Scalar> = Vec::with_capacity(n);
        for j in 0..n {
            let mut dj = self.get(j, j).clone();
            for (k, dk) in d.iter().enumerate() {
                let ljk = l.get(j, k);
                dj -= &(&(ljk * ljk) * dk);
            }
            if !dj.is_positive() {
                return Err(ExactError::NotPositiveDefinite(j));
            }
            let inv = dj.inverse().expect("positive pivot");
            for i in j + 1..n {
                let mut s = self.get(i, j).clone();
                for (k, dk) in d.iter().enumerate() {
                    s -= &(&(l.get(i, k) * l.get(j, k)) * dk);
                }
                l.data[i * n + j] = &s * &inv;
            }
            d.push(dj);
        }
        Ok((l, d))
    }

    /// Integer entries, or the first offending position.
    pub fn to_integer_rows(&self) -> Result<Vec<Vec<BigInt>>, ExactError> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        self.get(i, j)
                            .to_bigint()
                            .ok_or(ExactError::NonInteger(i, j))
                    })
                    .collect()
            })
            .collect()
    }

    /// Row-style Hermite normal form of an integer matrix; zero rows dropped.
    pub fn hnf(&self) -> Result<Self, ExactError> {
        let rows = self.to_integer_rows()?;
        let h = super::hnf_int(rows, self.cols);
        let field = Field::Rational;
        let rows = h
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| Scalar::from_bigint(x, field))
                    .collect()
            })
            .collect::<Vec<_>>();
        if rows.is_empty() {
            return Ok(Self::zeros(0, self.cols, field));
        }
        Self::from_rows(rows, field)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

struct Elimination {
    rank: usize,
    swaps: usize,
}

fn bareiss_eliminate(a: &mut [Scalar], rows: usize, cols: usize, field: Field) -> Elimination {
    let mut prev = Scalar::one(field);
    let mut r = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
            swaps += 1;
        }
        let pivot = a[r * cols + c].clone();
        for i in r + 1..rows {
            let lead = a[i * cols + c].clone();
            for j in c + 1..cols {
                let v = &(&pivot * &a[i * cols + j]) - &(&lead * &a[r * cols + j]);
                a[i * cols + j] = &v / &prev;
            }
            a[i * cols + c] = Scalar::zero(field);
        }
        prev = pivot;
        r += 1;
    }
    Elimination { rank: r, swaps }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ExactMatrix {}x{} over {}",
            self.rows, self.cols, self.field
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Incremental row echelon form over a field; rows are fed one at a time
/// and only the independent ones are kept.
#[derive(Clone, Debug)]
pub struct FieldEchelon {
    cols: usize,
    field: Field,
    /// (pivot column, row normalised to 1 at the pivot), sorted by pivot.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl FieldEchelon {
    pub fn new(cols: usize, field: Field) -> Self {
        FieldEchelon {
            cols,
            field,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Pivot columns in ascending order.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let factor = v[*p].clone();
            for j in *p..self.cols {
                if !row[j].is_zero() {
                    v[j] -= &(&factor * &row[j]);
                }
            }
        }
        v
    }

    /// True iff `v` lies in the row span.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> Result<bool, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::Dimension(format!(
                "row of {} vs {} columns",
                v.len(),
                self.cols
            )));
        }
        if let Some(bad) = v.iter().find(|x| x.field() != self.field) {
            return Err(ExactError::FieldMismatch(bad.field(), self.field));
        }
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = v[p].inverse().expect("nonzero pivot");
        for x in v.iter_mut().skip(p) {
            *x = &*x * &inv;
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n, Field::Rational)
    }

    fn mat(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn identity_rank_and_det() {
        let i3 = ExactMatrix::identity(3, Field::Rational);
        assert_eq!(i3.rank(), 3);
        assert_eq!(
            ExactMatrix::identity(4, Field::Rational).det().unwrap(),
            q(1)
        );
        assert_eq!(ExactMatrix::zeros(5, 7, Field::Rational).rank(), 0);
        assert!(i3.nullspace_basis().is_empty());
    }

    #[test]
    fn swap_has_determinant_minus_one() {
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).det().unwrap(), q(-1));
        assert!(matches!(
            mat(&[&[1, 2, 3]]).det(),
            Err(ExactError::NotSquare(1, 3))
        ));
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let k = mat(&[&[1, 1]]).nullspace_basis();
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn ldlt_diagonal_and_failure() {
        let g = mat(&[&[2, 0], &[0, 5]]);
        let (l, d) = g.ldlt().unwrap();
        assert_eq!(l, ExactMatrix::identity(2, Field::Rational));
        assert_eq!(d, vec![q(2), q(5)]);
        assert!(matches!(
            mat(&[&[-1]]).ldlt(),
            Err(ExactError::NotPositiveDefinite(0))
        ));
    }

    #[test]
    fn hnf_of_index_two_sublattice() {
        let h = mat(&[&[2, 0], &[0, 2], &[1, 1]]).hnf().unwrap();
        assert_eq!(h, mat(&[&[1, 1], &[0, 2]]));
        assert_eq!(h.det().unwrap(), q(2));
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(
            m.mul(&inv).unwrap(),
            ExactMatrix::identity(2, Field::Rational)
        );
        assert!(matches!(
            mat(&[&[1, 2], &[2, 4]]).inverse(),
            Err(ExactError::Singular)
        ));
    }

    #[test]
    fn echelon_tracks_rank() {
        let mut e = FieldEchelon::new(3, Field::Rational);
        assert!(e.insert(vec![q(1), q(2), q(3)]).unwrap());
        assert!(!e.insert(vec![q(2), q(4), q(6)]).unwrap());
        assert!(e.insert(vec![q(0), q(0), q(1)]).unwrap());
        assert!(e.contains(&[q(1), q(2), q(7)]));
        assert_eq!(e.rank(), 2);
    }
}
