//! Exhaustive searches for non-negative integer matrices under polynomial,
//! trace and determinant constraints, and the classifications built on them.

mod b2;
mod groups;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

pub use b2::{b2_obstruction_pipeline, B2Certificate, PairCandidate, StageRecord, LISTED_X_CANDIDATES};
pub use groups::{classify_group_reps, enumerate_subgroups, GroupRep, Subgroups};

use crate::based_cat::MetaValue;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::pfexact::quasi_idempotent_check;

/// Default cap on the number of candidate matrices examined.
pub const DEFAULT_BUDGET: u128 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Positivity {
    /// Entries in `0..=bound`.
    Nonnegative,
    /// Entries in `1..=bound`.
    Positive,
}

/// How solutions are reduced and ordered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// One representative per simultaneous-permutation class, the
    /// lexicographically largest; listed in descending order.
    ConjugacyMax,
    /// As above with the smallest representative; listed in ascending order.
    ConjugacyMin,
    /// Every solution whose diagonal is non-increasing; descending order.
    DiagonalSorted,
    /// Every solution; descending order.
    Raw,
}

/// Constraints on a `size × size` integer matrix `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixConstraintSet {
    pub size: usize,
    /// Coefficients of `p`, constant term first; `p(X) = 0` is required.
    pub polynomial: Vec<i64>,
    pub positivity: Positivity,
    pub trace: Option<i64>,
    pub determinant: Option<i64>,
    pub entry_bound: i64,
    /// Exclude the zero matrix.
    pub nonzero: bool,
    pub normalization: Normalization,
}

impl MatrixConstraintSet {
    pub fn new(
        size: usize,
        polynomial: Vec<i64>,
        positivity: Positivity,
        entry_bound: i64,
    ) -> Self {
        Self {
            size,
            polynomial,
            positivity,
            trace: None,
            determinant: None,
            entry_bound,
            nonzero: false,
            normalization: Normalization::ConjugacyMax,
        }
    }

    pub fn with_trace(mut self, t: i64) -> Self {
        self.trace = Some(t);
        self
    }

    pub fn with_determinant(mut self, d: i64) -> Self {
        self.determinant = Some(d);
        self
    }

    pub fn nonzero(mut self) -> Self {
        self.nonzero = true;
        self
    }

    pub fn normalized(mut self, n: Normalization) -> Self {
        self.normalization = n;
        self
    }

    fn check(&self) -> Result<()> {
        if self.size == 0 {
            return Err(Error::invalid("matrix size must be at least 1"));
        }
        if self.entry_bound < 1 {
            return Err(Error::invalid("entry bound must be at least 1"));
        }
        if self.polynomial.first().copied().unwrap_or(0) != 0 {
            return Err(Error::invalid("polynomial must have zero constant term"));
        }
        Ok(())
    }

    /// Number of candidate matrices the search visits.
    pub fn search_space(&self) -> u128 {
        let lo = match self.positivity {
            Positivity::Nonnegative => 0,
            Positivity::Positive => 1,
        };
        let choices = (self.entry_bound - lo + 1).max(0) as u128;
        let cells = (self.size * self.size) as u32;
        choices.checked_pow(cells).unwrap_or(u128::MAX)
    }
}

/// `p(X)` for square `X`, by Horner's rule; `None` on overflow.
pub fn evaluate_polynomial(p: &[i64], x: &IntMatrix) -> Option<IntMatrix> {
    let n = x.rows();
    let mut acc = IntMatrix::zeros(n, n);
    for &c in p.iter().rev() {
        acc = acc.checked_mul(x).ok()?;
        let mut scalar = IntMatrix::identity(n).checked_scale(c).ok()?;
        scalar.add_scaled(1, &acc).ok()?;
        acc = scalar;
    }
    Some(acc)
}

/// Lists every matrix meeting the constraints, normalized as requested.
/// Fails with [`Error::BudgetExceeded`] if the search space is larger than
/// `budget`.
pub fn enumerate_matrix_solutions(c: &MatrixConstraintSet, budget: u128) -> Result<Vec<IntMatrix>> {
    c.check()?;
    let needed = c.search_space();
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let k = c.size;
    let lo = match c.positivity {
        Positivity::Nonnegative => 0,
        Positivity::Positive => 1,
    };
    let mut entries = vec![lo; k * k];
    let mut found = Vec::new();
    loop {
        let x = IntMatrix::new(k, k, entries.clone()).expect("square");
        if accepts(c, &x)? {
            found.push(x);
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == entries.len() {
                return Ok(normalize(found, c.normalization));
            }
            if entries[pos] < c.entry_bound {
                entries[pos] += 1;
                break;
            }
            entries[pos] = lo;
            pos += 1;
        }
    }
}

fn accepts(c: &MatrixConstraintSet, x: &IntMatrix) -> Result<bool> {
    if c.nonzero && x.is_zero() {
        return Ok(false);
    }
    if let Some(t) = c.trace {
        if x.trace() != i128::from(t) {
            return Ok(false);
        }
    }
    if c.normalization == Normalization::DiagonalSorted
        && (1..c.size).any(|i| x.get(i - 1, i - 1) < x.get(i, i))
    {
        return Ok(false);
    }
    if let Some(d) = c.determinant {
        if x.determinant()? != d.into() {
            return Ok(false);
        }
    }
    let value = evaluate_polynomial(&c.polynomial, x)
        .ok_or(Error::Overflow("evaluating the polynomial"))?;
    Ok(value.is_zero())
}

fn normalize(found: Vec<IntMatrix>, how: Normalization) -> Vec<IntMatrix> {
    let mut out: Vec<IntMatrix> = match how {
        Normalization::ConjugacyMax => found
            .iter()
            .map(IntMatrix::canonical_form)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
        Normalization::ConjugacyMin => found
            .iter()
            .map(canonical_min)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
        Normalization::DiagonalSorted | Normalization::Raw => found,
    };
    out.sort_by(|a, b| a.entries().cmp(b.entries()));
    if how != Normalization::ConjugacyMin {
        out.reverse();
    }
    out
}

/// Lexicographically smallest simultaneous conjugate.
pub fn canonical_min(x: &IntMatrix) -> IntMatrix {
    crate::matrix::permutations(x.rows())
        .iter()
        .map(|p| x.conjugate_by(p))
        .min()
        .expect("at least one permutation")
}

/// Result of a classification search.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassificationReport {
    pub solutions: Vec<IntMatrix>,
    pub eliminated: Vec<(IntMatrix, String)>,
    pub conclusion: String,
    pub parameters: BTreeMap<String, MetaValue>,
}

/// Positive integer matrices `X` with `X² = mX`, of every size up to
/// `size_max`, one per permutation class. Entries of such a matrix are
/// bounded by its trace `m`.
pub fn classify_quasi_idempotent(m: i64, size_max: usize) -> Result<ClassificationReport> {
    if m < 1 {
        return Err(Error::precondition("m must be at least 1"));
    }
    if size_max < 1 || size_max as i64 > m {
        return Err(Error::precondition(format!(
            "size_max must lie in 1..={m}: a positive solution has trace m"
        )));
    }
    let mut solutions = Vec::new();
    for k in 1..=size_max {
        let c = MatrixConstraintSet::new(k, vec![0, -m, 1], Positivity::Positive, m)
            .normalized(Normalization::ConjugacyMin);
        for x in enumerate_matrix_solutions(&c, DEFAULT_BUDGET)? {
            let q = quasi_idempotent_check(&x, m)?;
            debug_assert!(q.holds && q.positive && q.rank1 && x.trace() == i128::from(m));
            solutions.push(x);
        }
    }
    let mut parameters = BTreeMap::new();
    parameters.insert("m".to_string(), MetaValue::Int(m));
    parameters.insert("size_max".to_string(), MetaValue::Int(size_max as i64));
    parameters.insert("entry_bound".to_string(), MetaValue::Int(m));
    parameters.insert("positivity".to_string(), MetaValue::from("positive"));
    let conclusion = format!(
        "{} permutation classes of positive {}-quasi-idempotent matrices of size at most {}",
        solutions.len(),
        m,
        size_max
    );
    Ok(ClassificationReport {
        solutions,
        eliminated: Vec::new(),
        conclusion,
        parameters,
    })
}
