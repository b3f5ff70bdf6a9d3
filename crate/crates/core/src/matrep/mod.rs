//! Non-negative integer matrix representations of a based category.
//!
//! A [`MatrixRep`] assigns to every object `i` an ordered list of
//! indecomposables and to every 1-morphism `F: i → j` the matrix whose
//! `(Y, X)` entry is the multiplicity of `Y` in `F X` (rows over `j`, columns
//! over `i`).
//!
//! Simple transitive quotients are represented by their transitive parents'
//! matrices. The ideal one factors out contains no identity on a nonzero
//! indecomposable, so it lies in the radical; by Krull–Schmidt it changes
//! neither the indecomposables nor the multiplicities.

mod equivalence;
mod filtration;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use equivalence::reps_equivalent;
pub use filtration::{
    action_preorder, coideals, complete_filtrations, is_transitive, jh_subquotients, subquotient,
    weak_jh_verify, ActionPreorder, Filtration, WeakJhReport, DEFAULT_FILTRATION_CAP,
};

use crate::based_cat::{BasedCategory, MorphismId, ObjectId};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    category: Arc<BasedCategory>,
    ind: Vec<Vec<String>>,
    matrices: Vec<IntMatrix>,
}

impl MatrixRep {
    /// Checks only shapes and label uniqueness; the representation axioms are
    /// checked by [`validate_rep`].
    pub fn new(
        category: Arc<BasedCategory>,
        ind: Vec<Vec<String>>,
        matrices: Vec<IntMatrix>,
    ) -> Result<Self> {
        if ind.len() != category.objects().len() {
            return Err(Error::Shape(format!(
                "{} indecomposable lists for {} objects",
                ind.len(),
                category.objects().len()
            )));
        }
        for (obj, labels) in ind.iter().enumerate() {
            let unique: BTreeSet<&String> = labels.iter().collect();
            if unique.len() != labels.len() {
                return Err(Error::invalid(format!(
                    "indecomposable labels over `{}` are not distinct",
                    category.objects()[obj]
                )));
            }
        }
        if matrices.len() != category.len() {
            return Err(Error::Shape(format!(
                "{} matrices for {} 1-morphisms",
                matrices.len(),
                category.len()
            )));
        }
        for (id, m) in category.morphism_ids().zip(&matrices) {
            let f = category.morphism(id);
            let (rows, cols) = (ind[f.cod.0].len(), ind[f.dom.0].len());
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::Shape(format!(
                    "matrix of {} is {}×{}, expected {rows}×{cols}",
                    f.name,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self {
            category,
            ind,
            matrices,
        })
    }

    /// The representation with no indecomposables.
    pub fn empty(category: Arc<BasedCategory>) -> Self {
        let ind = vec![Vec::new(); category.objects().len()];
        let matrices = vec![IntMatrix::zeros(0, 0); category.len()];
        Self {
            category,
            ind,
            matrices,
        }
    }

    pub fn category(&self) -> &BasedCategory {
        &self.category
    }

    pub fn category_arc(&self) -> &Arc<BasedCategory> {
        &self.category
    }

    pub fn ind(&self, obj: ObjectId) -> &[String] {
        &self.ind[obj.0]
    }

    pub fn ind_lists(&self) -> &[Vec<String>] {
        &self.ind
    }

    pub fn matrix(&self, f: MorphismId) -> &IntMatrix {
        &self.matrices[f.0]
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn matrix_by_name(&self, name: &str) -> Result<&IntMatrix> {
        Ok(self.matrix(self.category.lookup(name)?))
    }

    /// Total number of indecomposables.
    pub fn dimension(&self) -> usize {
        self.ind.iter().map(Vec::len).sum()
    }

    /// Start of each object's block in the global numbering of
    /// indecomposables (objects in order, labels in order).
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ind.len());
        let mut acc = 0;
        for labels in &self.ind {
            out.push(acc);
            acc += labels.len();
        }
        out
    }

    /// `(object, position)` of every indecomposable in global order.
    pub fn layout(&self) -> Vec<(ObjectId, usize)> {
        self.ind
            .iter()
            .enumerate()
            .flat_map(|(obj, labels)| (0..labels.len()).map(move |k| (ObjectId(obj), k)))
            .collect()
    }

    pub fn global_label(&self, global: usize) -> &str {
        let (obj, k) = self.layout()[global];
        &self.ind[obj.0][k]
    }

    /// Moves indecomposable `k` over object `i` to position `perms[i][k]`.
    pub fn relabel(&self, perms: &[Vec<usize>]) -> Result<Self> {
        if perms.len() != self.ind.len()
            || perms
                .iter()
                .zip(&self.ind)
                .any(|(p, l)| !is_permutation(p, l.len()))
        {
            return Err(Error::invalid(
                "relabelling must be one permutation per object",
            ));
        }
        let ind = self
            .ind
            .iter()
            .zip(perms)
            .map(|(labels, p)| {
                let mut out = vec![String::new(); labels.len()];
                for (k, label) in labels.iter().enumerate() {
                    out[p[k]] = label.clone();
                }
                out
            })
            .collect();
        let matrices = self
            .category
            .morphism_ids()
            .map(|id| {
                let f = self.category.morphism(id);
                self.matrix(id).relabel(&perms[f.cod.0], &perms[f.dom.0])
            })
            .collect();
        Self::new(self.category.clone(), ind, matrices)
    }

    /// Restriction to the indecomposables with the given global indices,
    /// kept in global order.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let layout = self.layout();
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut picked: Vec<Vec<usize>> = vec![Vec::new(); self.ind.len()];
        for &g in &keep {
            let (obj, k) = layout[g];
            picked[obj.0].push(k);
        }
        let ind = picked
            .iter()
            .enumerate()
            .map(|(obj, ks)| ks.iter().map(|&k| self.ind[obj][k].clone()).collect())
            .collect();
        let matrices = self
            .category
            .morphism_ids()
            .map(|id| {
                let f = self.category.morphism(id);
                self.matrix(id)
                    .submatrix(&picked[f.cod.0], &picked[f.dom.0])
            })
            .collect();
        Self {
            category: self.category.clone(),
            ind,
            matrices,
        }
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n
        && p.iter()
            .all(|&x| x < n && !core::mem::replace(&mut seen[x], true))
}

pub(crate) fn same_category(a: &Arc<BasedCategory>, b: &Arc<BasedCategory>) -> bool {
    Arc::ptr_eq(a, b) || a.same_structure(b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepViolation {
    /// An identity 1-morphism is not sent to an identity matrix.
    Identity { identity: String },
    NegativeEntry {
        morphism: String,
        row: usize,
        col: usize,
    },
    /// `[F][G] ≠ Σ_H c_{F,G}^H [H]`.
    HomomorphismLaw { left: String, right: String },
}

impl RepViolation {
    pub fn kind(&self) -> &'static str {
        match self {
            RepViolation::Identity { .. } => "identity",
            RepViolation::NegativeEntry { .. } => "negative-entry",
            RepViolation::HomomorphismLaw { .. } => "homomorphism-law",
        }
    }
}

impl fmt::Display for RepViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepViolation::Identity { identity } => {
                write!(f, "{identity} is not sent to an identity matrix")
            }
            RepViolation::NegativeEntry { morphism, row, col } => {
                write!(
                    f,
                    "matrix of {morphism} has a negative entry at ({row}, {col})"
                )
            }
            RepViolation::HomomorphismLaw { left, right } => write!(
                f,
                "[{left}]·[{right}] differs from the matrix of {left} ∘ {right}"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepReport {
    pub violations: Vec<RepViolation>,
}

impl RepReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Composable pairs `(F, G)` for which `matrices` breaks the homomorphism
/// law. `matrices` is indexed by 1-morphism and must have consistent shapes.
pub fn homomorphism_failures(
    cat: &BasedCategory,
    matrices: &[IntMatrix],
) -> Vec<(MorphismId, MorphismId)> {
    let mut out = Vec::new();
    for f in cat.morphism_ids() {
        for g in cat.morphism_ids() {
            if !cat.composable(f, g) {
                continue;
            }
            let lhs = matrices[f.0].checked_mul(&matrices[g.0]);
            let rhs = (|| {
                let mut acc = IntMatrix::zeros(matrices[f.0].rows(), matrices[g.0].cols());
                for (h, k) in cat.compose(f, g)?.iter() {
                    let k = i64::try_from(k).map_err(|_| Error::Overflow("scaling a matrix"))?;
                    acc.add_scaled(k, &matrices[h.0])?;
                }
                Ok::<_, Error>(acc)
            })();
            match (lhs, rhs) {
                (Ok(l), Ok(r)) if l == r => {}
                _ => out.push((f, g)),
            }
        }
    }
    out
}

/// Checks identities, non-negativity and the homomorphism law.
pub fn validate_rep(rep: &MatrixRep) -> RepReport {
    let cat = rep.category();
    let mut violations = Vec::new();
    for id in cat.morphism_ids() {
        let f = cat.morphism(id);
        let m = rep.matrix(id);
        if f.is_identity && *m != IntMatrix::identity(rep.ind(f.dom).len()) {
            violations.push(RepViolation::Identity {
                identity: f.name.clone(),
            });
        }
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if m.get(r, c) < 0 {
                    violations.push(RepViolation::NegativeEntry {
                        morphism: f.name.clone(),
                        row: r,
                        col: c,
                    });
                }
            }
        }
    }
    for (f, g) in homomorphism_failures(cat, rep.matrices()) {
        violations.push(RepViolation::HomomorphismLaw {
            left: cat.name(f).to_string(),
            right: cat.name(g).to_string(),
        });
    }
    RepReport { violations }
}

/// The principal representation `C(i, −)`: over `j` the indecomposables are
/// the 1-morphisms `i → j`, and `G` acts by `(F′, F) ↦ c_{G,F}^{F′}`.
pub fn principal_rep(cat: &Arc<BasedCategory>, i: ObjectId) -> Result<MatrixRep> {
    if i.0 >= cat.objects().len() {
        return Err(Error::Unknown {
            kind: "object",
            name: format!("#{}", i.0),
        });
    }
    let n_obj = cat.objects().len();
    let basis: Vec<Vec<MorphismId>> = (0..n_obj).map(|j| cat.hom(i, ObjectId(j))).collect();
    structure_rep(cat, &basis)
}

/// Shared by principal and cell representations: `basis[j]` lists the
/// 1-morphisms spanning the representation over `j`.
pub(crate) fn structure_rep(
    cat: &Arc<BasedCategory>,
    basis: &[Vec<MorphismId>],
) -> Result<MatrixRep> {
    let ind = basis
        .iter()
        .map(|b| b.iter().map(|&f| cat.name(f).to_string()).collect())
        .collect();
    let mut matrices = Vec::with_capacity(cat.len());
    for g in cat.morphism_ids() {
        let gm = cat.morphism(g);
        let (rows, cols) = (&basis[gm.cod.0], &basis[gm.dom.0]);
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (c, &f) in cols.iter().enumerate() {
            let product = cat.compose(g, f)?;
            for (r, &f2) in rows.iter().enumerate() {
                let k = i64::try_from(product.get(f2))
                    .map_err(|_| Error::Overflow("building an action matrix"))?;
                m.set(r, c, k);
            }
        }
        matrices.push(m);
    }
    let rep = MatrixRep::new(cat.clone(), ind, matrices)?;
    debug_assert!(validate_rep(&rep).is_valid());
    Ok(rep)
}

/// Block-diagonal sum. Labels of the second summand that clash with the first
/// get primes appended.
pub fn direct_sum(a: &MatrixRep, b: &MatrixRep) -> Result<MatrixRep> {
    if !same_category(&a.category, &b.category) {
        return Err(Error::CategoryMismatch);
    }
    let ind = a
        .ind
        .iter()
        .zip(&b.ind)
        .map(|(la, lb)| {
            let mut out = la.clone();
            for label in lb {
                let mut l = label.clone();
                while out.contains(&l) {
                    l.push('′');
                }
                out.push(l);
            }
            out
        })
        .collect();
    let matrices = a
        .matrices
        .iter()
        .zip(&b.matrices)
        .map(|(x, y)| x.block_diagonal(y))
        .collect();
    MatrixRep::new(a.category.clone(), ind, matrices)
}

/// The family `⟦F⟧ = [F*]ᵗ`, indexed by 1-morphism.
pub fn simple_basis_matrices(rep: &MatrixRep) -> Result<Vec<IntMatrix>> {
    let cat = rep.category();
    cat.involution().ok_or(Error::MissingInvolution)?;
    let out: Vec<IntMatrix> = cat
        .morphism_ids()
        .map(|f| {
            rep.matrix(cat.star(f).expect("involution present"))
                .transpose()
        })
        .collect();
    debug_assert!(!validate_rep(rep).is_valid() || homomorphism_failures(cat, &out).is_empty());
    Ok(out)
}
