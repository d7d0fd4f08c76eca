//! Integer-only routines: Hermite normal form, Bareiss determinant and an
//! incremental fraction-free echelon form. Each runs on `i128` while entries
//! stay below 2^62 and falls back to `BigInt` otherwise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

trait Int: Clone + Integer + Signed + std::fmt::Debug {
    fn fits(&self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Int for i128 {
    fn fits(&self) -> bool {
        self.unsigned_abs() < (1u128 << 62)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Int for BigInt {
    fn fits(&self) -> bool {
        true
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

#[derive(Debug)]
struct Overflow;

fn guard<T: Int>(v: &[T]) -> Result<(), Overflow> {
    if v.iter().all(Int::fits) {
        Ok(())
    } else {
        Err(Overflow)
    }
}

/// `(g, x, y)` with `g = gcd(a, b) > 0` and `g = x*a + y*b`.
fn ext_gcd<T: Int>(a: &T, b: &T) -> (T, T, T) {
    if (b.clone() % a.clone()).is_zero() {
        let s = if a.is_negative() { -T::one() } else { T::one() };
        return (a.abs(), s, T::zero());
    }
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

fn combine<T: Int>(a: &T, u: &[T], b: &T, v: &[T]) -> Vec<T> {
    u.iter()
        .zip(v)
        .map(|(x, y)| a.clone() * x.clone() + b.clone() * y.clone())
        .collect()
}

fn reduce_tail<T: Int>(
    row: &mut [T],
    from: usize,
    basis: &[Option<Vec<T>>],
) -> Result<(), Overflow> {
    for j in from..row.len() {
        if let Some(pivot_row) = &basis[j] {
            let q = row[j].div_floor(&pivot_row[j]);
            if !q.is_zero() {
                for (x, p) in row.iter_mut().zip(pivot_row).skip(j) {
                    *x = x.clone() - q.clone() * p.clone();
                }
            }
        }
    }
    guard(row)
}

fn hnf_generic<T: Int>(
    rows: impl Iterator<Item = Vec<T>>,
    cols: usize,
) -> Result<Vec<Vec<T>>, Overflow> {
    let mut basis: Vec<Option<Vec<T>>> = vec![None; cols];
    for mut v in rows {
        guard(&v)?;
        let mut i = 0;
        while i < cols {
            if v[i].is_zero() {
                i += 1;
                continue;
            }
            match basis[i].take() {
                None => {
                    if v[i].is_negative() {
                        v.iter_mut().for_each(|x| *x = -x.clone());
                    }
                    reduce_tail(&mut v, i + 1, &basis)?;
                    basis[i] = Some(v);
                    break;
                }
                Some(b) => {
                    let (g, x, y) = ext_gcd(&b[i], &v[i]);
                    if y.is_zero() {
                        // pivot already divides the entry
                        let q = v[i].clone() / b[i].clone();
                        v = combine(&T::one(), &v, &(-q), &b);
                        basis[i] = Some(b);
                    } else {
                        let mut nb = combine(&x, &b, &y, &v);
                        let bi = b[i].clone() / g.clone();
                        let vi = v[i].clone() / g;
                        v = combine(&bi, &v, &(-vi), &b);
                        reduce_tail(&mut nb, i + 1, &basis)?;
                        basis[i] = Some(nb);
                    }
                    guard(&v)?;
                    i += 1;
                }
            }
        }
    }
    let pivots: Vec<usize> = (0..cols).filter(|&i| basis[i].is_some()).collect();
    for &i in &pivots {
        let pivot_row = basis[i].clone().expect("pivot row");
        for &k in pivots.iter().filter(|&&k| k < i) {
            let row = basis[k].as_mut().expect("pivot row");
            let q = row[i].div_floor(&pivot_row[i]);
            if !q.is_zero() {
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(i) {
                    *x = x.clone() - q.clone() * p.clone();
                }
            }
        }
    }
    Ok(basis.into_iter().flatten().collect())
}

/// Row-style Hermite normal form of the row span of `rows` (each of length
/// `cols`): upper triangular, positive pivots, entries above each pivot
/// reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hnf_int(rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128().filter(|v| v.fits())).collect())
        .collect();
    if let Some(small) = small {
        if let Ok(h) = hnf_generic(small.into_iter(), cols) {
            return h
                .into_iter()
                .map(|r| r.iter().map(Int::to_big).collect())
                .collect();
        }
    }
    hnf_generic(rows.into_iter(), cols).expect("BigInt never overflows")
}

/// Hermite normal form of an `i64` generating set streamed row by row.
pub fn hnf_i64_rows<'a>(
    rows: impl Iterator<Item = &'a [i64]> + Clone,
    cols: usize,
) -> Vec<Vec<BigInt>> {
    let small = rows
        .clone()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect::<Vec<_>>());
    if let Ok(h) = hnf_generic(small, cols) {
        return h
            .into_iter()
            .map(|r| r.iter().map(Int::to_big).collect())
            .collect();
    }
    let big = rows.map(|r| r.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
    hnf_generic(big, cols).expect("BigInt never overflows")
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn bareiss_det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut prev = BigInt::one();
    let mut sign = 1;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if sign < 0 {
        -prev
    } else {
        prev
    }
}

#[derive(Clone, Debug)]
struct Echelon<T> {
    cols: usize,
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: Int> Echelon<T> {
    fn reduce(&self, mut v: Vec<T>) -> Result<Vec<T>, Overflow> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = row[*p].clone();
            let b = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = a.clone() * x.clone() - b.clone() * r.clone();
            }
            make_primitive(&mut v);
            guard(&v)?;
        }
        Ok(v)
    }

    fn insert(&mut self, v: Vec<T>) -> Result<bool, Overflow> {
        let mut v = self.reduce(v)?;
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        if v[p].is_negative() {
            v.iter_mut().for_each(|x| *x = -x.clone());
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        Ok(true)
    }
}

fn make_primitive<T: Int>(v: &mut [T]) {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        v.iter_mut().for_each(|x| *x = x.clone() / g.clone());
    }
}

/// Incremental fraction-free row echelon form over the integers. Rows are
/// kept primitive (content removed), so ranks over `Q` are exact.
#[derive(Clone, Debug)]
pub struct IntEchelon {
    inner: EchelonRepr,
}

#[derive(Clone, Debug)]
enum EchelonRepr {
    Small(Echelon<i128>),
    Big(Echelon<BigInt>),
}

impl IntEchelon {
    pub fn new(cols: usize) -> Self {
        IntEchelon {
            inner: EchelonRepr::Small(Echelon {
                cols,
                rows: Vec::new(),
            }),
        }
    }

    pub fn cols(&self) -> usize {
        match &self.inner {
            EchelonRepr::Small(e) => e.cols,
            EchelonRepr::Big(e) => e.cols,
        }
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            EchelonRepr::Small(e) => e.rows.len(),
            EchelonRepr::Big(e) => e.rows.len(),
        }
    }

    /// Pivot columns in ascending order; the rank of the first `c` columns
    /// of everything inserted is the number of pivots below `c`.
    pub fn pivots(&self) -> Vec<usize> {
        match &self.inner {
            EchelonRepr::Small(e) => e.rows.iter().map(|(p, _)| *p).collect(),
            EchelonRepr::Big(e) => e.rows.iter().map(|(p, _)| *p).collect(),
        }
    }

    fn promote(&mut self) {
        if let EchelonRepr::Small(e) = &self.inner {
            let rows = e
                .rows
                .iter()
                .map(|(p, r)| (*p, r.iter().map(Int::to_big).collect()))
                .collect();
            self.inner = EchelonRepr::Big(Echelon { cols: e.cols, rows });
        }
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert_i64(&mut self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.cols(), "row length");
        if let EchelonRepr::Small(e) = &mut self.inner {
            let small: Vec<i128> = v.iter().map(|&x| i128::from(x)).collect();
            if let Ok(grew) = e.insert(small) {
                return grew;
            }
            self.promote();
        }
        self.insert_bigint(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn insert_bigint(&mut self, v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.cols(), "row length");
        if let EchelonRepr::Small(e) = &mut self.inner {
            let small: Option<Vec<i128>> =
                v.iter().map(|x| x.to_i128().filter(Int::fits)).collect();
            if let Some(small) = small {
                if let Ok(grew) = e.insert(small) {
                    return grew;
                }
            }
            self.promote();
        }
        match &mut self.inner {
            EchelonRepr::Big(e) => e.insert(v).expect("BigInt never overflows"),
            EchelonRepr::Small(_) => unreachable!("promoted above"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn hnf_basic() {
        assert_eq!(
            hnf_int(big(&[&[2, 0], &[0, 2], &[1, 1]]), 2),
            big(&[&[1, 1], &[0, 2]])
        );
        assert_eq!(
            hnf_int(big(&[&[1, 0], &[0, 1]]), 2),
            big(&[&[1, 0], &[0, 1]])
        );
        assert_eq!(hnf_int(big(&[&[0, 0]]), 2), Vec::<Vec<BigInt>>::new());
        assert_eq!(hnf_int(big(&[&[4, 6], &[6, 9]]), 2), big(&[&[2, 3]]));
    }

    #[test]
    fn hnf_falls_back_to_bigint() {
        let huge = BigInt::from(1u64 << 63) * BigInt::from(3);
        let rows = vec![
            vec![huge.clone(), BigInt::from(1)],
            vec![BigInt::from(0), BigInt::from(5)],
        ];
        let h = hnf_int(rows, 2);
        assert_eq!(h[0][0], huge);
        assert_eq!(h[1], vec![BigInt::from(0), BigInt::from(5)]);
    }

    #[test]
    fn det_matches_cofactor() {
        assert_eq!(
            bareiss_det_int(&big(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]])),
            BigInt::from(18)
        );
        assert_eq!(bareiss_det_int(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(bareiss_det_int(&big(&[&[1, 2], &[2, 4]])), BigInt::from(0));
    }

    #[test]
    fn echelon_rank() {
        let mut e = IntEchelon::new(3);
        assert!(e.insert_i64(&[2, 4, 6]));
        assert!(!e.insert_i64(&[1, 2, 3]));
        assert!(e.insert_i64(&[0, 3, 1]));
        assert!(e.insert_i64(&[5, 5, 5]));
        assert!(!e.insert_i64(&[7, -1, 2]));
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn echelon_promotes_on_overflow() {
        let mut e = IntEchelon::new(2);
        let a = i64::MAX / 3;
        assert!(e.insert_i64(&[a, 1]));
        assert!(e.insert_i64(&[a - 1, 1]));
        assert!(!e.insert_i64(&[1, 1]));
        assert_eq!(e.rank(), 2);
    }
}
