//! Dense integer matrices with exact elimination.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A dense row-major matrix of machine integers.
///
/// Ordering is by shape first, then lexicographic on the row-major entries,
/// which is the order used for all canonical listings in this crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}×{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows; every row must have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(value: i64) -> Self {
        Self {
            rows: 1,
            cols: 1,
            data: vec![value],
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn row(&self, row: usize) -> &[i64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&x| x >= 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.data.is_empty() && self.data.iter().all(|&x| x > 0)
    }

    pub fn max_entry(&self) -> Option<i64> {
        self.data.iter().copied().max()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn trace(&self) -> i128 {
        (0..self.rows.min(self.cols))
            .map(|i| i128::from(self.get(i, i)))
            .sum()
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a
                        .checked_mul(rhs.get(k, j))
                        .ok_or(Error::Overflow("multiplying matrices"))?;
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx]
                        .checked_add(prod)
                        .ok_or(Error::Overflow("multiplying matrices"))?;
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("adding matrices")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { data, ..*self })
    }

    pub fn checked_scale(&self, factor: i64) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|a| {
                a.checked_mul(factor)
                    .ok_or(Error::Overflow("scaling a matrix"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { data, ..*self })
    }

    /// `self += factor * rhs`.
    pub fn add_scaled(&mut self, factor: i64, rhs: &Self) -> Result<()> {
        self.same_shape(rhs)?;
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a = b
                .checked_mul(factor)
                .and_then(|p| a.checked_add(p))
                .ok_or(Error::Overflow("accumulating matrices"))?;
        }
        Ok(())
    }

    fn same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}×{} and {}×{} differ",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    pub fn block_diagonal(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    /// Relabels rows by `row_perm` and columns by `col_perm`: entry `(i, j)`
    /// moves to `(row_perm[i], col_perm[j])`.
    pub fn relabel(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        debug_assert_eq!(row_perm.len(), self.rows);
        debug_assert_eq!(col_perm.len(), self.cols);
        let mut out = Self::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(row_perm[r], col_perm[c], self.get(r, c));
            }
        }
        out
    }

    /// Simultaneous row/column relabeling `P A P⁻¹` of a square matrix.
    pub fn conjugate_by(&self, perm: &[usize]) -> Self {
        self.relabel(perm, perm)
    }

    /// Representative of the orbit under simultaneous row/column permutation:
    /// the lexicographically largest row-major entry vector.
    pub fn canonical_form(&self) -> Self {
        debug_assert!(self.is_square());
        permutations(self.rows)
            .into_iter()
            .map(|p| self.conjugate_by(&p))
            .max()
            .unwrap_or_else(|| self.clone())
    }

    pub fn is_permutation_conjugate(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.is_square()
            && self.canonical_form() == other.canonical_form()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "determinant of a {}×{} matrix",
                self.rows, self.cols
            )));
        }
        let (rank, det) = bareiss(self);
        Ok(if rank < self.rows {
            BigInt::zero()
        } else {
            det
        })
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        bareiss(self).0
    }

    pub fn column_sums(&self) -> Vec<i128> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| i128::from(self.get(r, c))).sum())
            .collect()
    }
}

/// Fraction-free elimination. Returns the rank and, when the matrix is square
/// and of full rank, its determinant.
fn bareiss(m: &IntMatrix) -> (usize, BigInt) {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| m.row(r).iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut prev = BigInt::from(1);
    let mut sign_flips = 0usize;
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            a.swap(pivot, rank);
            sign_flips += 1;
        }
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    let mut det = if rank == rows && rows == cols && rows > 0 {
        a[rows - 1][cols - 1].clone()
    } else if rows == 0 && cols == 0 {
        BigInt::from(1)
    } else {
        BigInt::zero()
    };
    if sign_flips % 2 == 1 {
        det = -det;
    }
    (rank, det)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 {
            return write!(f, "[]({}×{})", self.rows, self.cols);
        }
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    /// Rank from the largest non-vanishing minor, by brute force.
    fn minor_rank(a: &IntMatrix) -> usize {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            (0u32..1 << n)
                .filter(|s| s.count_ones() as usize == k)
                .map(|s| (0..n).filter(|i| s & (1 << i) != 0).collect())
                .collect()
        }
        fn det(a: &IntMatrix) -> i128 {
            // Leibniz expansion
            let n = a.rows();
            permutations(n)
                .iter()
                .map(|p| {
                    let inversions = (0..n)
                        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                        .filter(|&(i, j)| p[i] > p[j])
                        .count();
                    let prod: i128 = (0..n).map(|i| i128::from(a.get(i, p[i]))).product();
                    if inversions % 2 == 0 {
                        prod
                    } else {
                        -prod
                    }
                })
                .sum()
        }
        for k in (1..=a.rows().min(a.cols())).rev() {
            for rs in subsets(a.rows(), k) {
                for cs in subsets(a.cols(), k) {
                    if det(&a.submatrix(&rs, &cs)) != 0 {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rank_examples() {
        assert_eq!(m(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]).rank(), 1);
        assert_eq!(m(&[&[1, 1], &[2, 2]]).rank(), 1);
        assert_eq!(IntMatrix::identity(2).rank(), 2);
        assert_eq!(IntMatrix::zeros(3, 2).rank(), 0);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(
            m(&[&[4, 4], &[1, 0]]).determinant().unwrap(),
            BigInt::from(-4)
        );
        assert_eq!(
            m(&[&[0, 1], &[1, 0]]).determinant().unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])
                .determinant()
                .unwrap(),
            BigInt::from(6)
        );
        assert!(m(&[&[1, 2], &[2, 4]]).determinant().unwrap().is_zero());
    }

    #[test]
    fn canonical_form_identifies_conjugates() {
        let a = m(&[&[2, 0], &[0, 0]]);
        let b = m(&[&[0, 0], &[0, 2]]);
        assert!(a.is_permutation_conjugate(&b));
        assert_eq!(b.canonical_form(), a);
        let c = m(&[&[2, 3], &[0, 0]]);
        let d = m(&[&[2, 0], &[3, 0]]);
        assert!(!c.is_permutation_conjugate(&d));
    }

    #[test]
    fn permutations_are_complete() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(4)[1], vec![0, 1, 3, 2]);
    }

    proptest::proptest! {
        #[test]
        fn rank_matches_minor_oracle(
            rows in 1usize..=4,
            cols in 1usize..=4,
            seed in proptest::collection::vec(-3i64..=3, 16),
        ) {
            let a = IntMatrix::new(rows, cols, seed[..rows * cols].to_vec()).unwrap();
            proptest::prop_assert_eq!(a.rank(), minor_rank(&a));
        }
    }
}
