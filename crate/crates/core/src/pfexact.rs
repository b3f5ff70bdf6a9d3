//! Exact Perron–Frobenius facts for quasi-idempotent integer matrices.
//!
//! From `A² = mA` the eigenvalues lie in `{0, m}`, so for nonzero `A` the
//! Perron–Frobenius eigenvalue is `m`. Nothing here uses floating point.

use alloc::format;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

fn require_square(a: &IntMatrix) -> Result<()> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::Shape(format!(
            "expected a non-empty square matrix, got {}×{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

/// Smallest and largest column sum; these bracket the Perron–Frobenius
/// eigenvalue of a non-negative matrix.
pub fn column_sum_bounds(a: &IntMatrix) -> Result<(i128, i128)> {
    require_square(a)?;
    if !a.is_nonnegative() {
        return Err(Error::invalid(
            "column-sum bounds need non-negative entries",
        ));
    }
    let sums = a.column_sums();
    let min = *sums.iter().min().expect("non-empty");
    let max = *sums.iter().max().expect("non-empty");
    Ok((min, max))
}

/// Rank over ℚ.
pub fn rank_exact(a: &IntMatrix) -> usize {
    a.rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuasiIdempotent {
    /// `A² = mA`.
    pub holds: bool,
    pub positive: bool,
    pub rank1: bool,
    /// `m` when `A² = mA` and `A ≠ 0`.
    pub pf_eigenvalue: Option<i64>,
}

pub fn quasi_idempotent_check(a: &IntMatrix, m: i64) -> Result<QuasiIdempotent> {
    require_square(a)?;
    if m < 1 {
        return Err(Error::precondition("m must be at least 1"));
    }
    let holds = a.checked_mul(a)? == a.checked_scale(m)?;
    let rank1 = a.rank() == 1;
    let out = QuasiIdempotent {
        holds,
        positive: a.is_positive(),
        rank1,
        pf_eigenvalue: (holds && !a.is_zero()).then_some(m),
    };
    debug_assert!(!(holds && rank1) || a.trace() == i128::from(m));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorollaryCheck {
    pub applicable: bool,
    pub columns_equal: bool,
}

/// For a positive rank-one `A` with `A² = mA`, equality of `m` with the
/// smallest or largest column sum forces all columns to coincide.
/// `columns_equal` is always the direct comparison.
pub fn corollary_check(a: &IntMatrix, m: i64) -> Result<CorollaryCheck> {
    require_square(a)?;
    let columns_equal = (1..a.cols()).all(|c| a.column(c) == a.column(0));
    let applicable = if a.is_positive() && a.rank() == 1 && m >= 1 {
        let qi = quasi_idempotent_check(a, m)?;
        let (lo, hi) = column_sum_bounds(a)?;
        qi.holds && (lo == i128::from(m) || hi == i128::from(m))
    } else {
        false
    };
    debug_assert!(!applicable || columns_equal);
    Ok(CorollaryCheck {
        applicable,
        columns_equal,
    })
}
