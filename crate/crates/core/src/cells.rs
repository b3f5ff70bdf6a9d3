//! Left, right and two-sided preorders on indecomposable 1-morphisms, their
//! cells, strong regularity, the numerical condition and cell
//! representations.
//!
//! Cell representations are built from the structure constants directly.
//! The quotient by the unique maximal ideal does not change the matrices: that
//! ideal contains no identity of an indecomposable, so it lies in the radical.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::based_cat::{BasedCategory, MorphismId};
use crate::error::{Error, Result};
use crate::matrep::{structure_rep, MatrixRep};
use crate::matrix::IntMatrix;
use crate::order::{ClassOrder, Preorder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellSide {
    Left,
    Right,
    TwoSided,
}

impl CellSide {
    pub fn as_str(self) -> &'static str {
        match self {
            CellSide::Left => "left",
            CellSide::Right => "right",
            CellSide::TwoSided => "two-sided",
        }
    }
}

impl fmt::Display for CellSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for CellSide {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" | "LEFT" => Ok(CellSide::Left),
            "right" | "RIGHT" => Ok(CellSide::Right),
            "two-sided" | "TWO_SIDED" | "two_sided" => Ok(CellSide::TwoSided),
            _ => Err(Error::invalid(format!("unknown side `{s}`"))),
        }
    }
}

/// A preorder on 1-morphisms with its cells in canonical order: members by
/// category order, cells by the lexicographically smallest member name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellStructure {
    pub side: CellSide,
    preorder: Preorder,
    cells: Vec<Vec<MorphismId>>,
    cell_of: Vec<usize>,
    order: ClassOrder,
}

impl CellStructure {
    /// `G ≥ F`.
    pub fn geq(&self, g: MorphismId, f: MorphismId) -> bool {
        self.preorder.geq(g.0, f.0)
    }

    pub fn preorder(&self) -> &Preorder {
        &self.preorder
    }

    pub fn cells(&self) -> &[Vec<MorphismId>] {
        &self.cells
    }

    pub fn cell_index(&self, f: MorphismId) -> usize {
        self.cell_of[f.0]
    }

    pub fn cell_of(&self, f: MorphismId) -> &[MorphismId] {
        &self.cells[self.cell_of[f.0]]
    }

    pub fn order(&self) -> &ClassOrder {
        &self.order
    }

    /// `(a, b)` with cell `a` strictly above cell `b`.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        self.order.pairs()
    }

    /// Index of the cell with exactly these members, in any order.
    pub fn find_cell(&self, members: &[MorphismId]) -> Option<usize> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        self.cells.iter().position(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c == sorted
        })
    }
}

/// One step of the preorder: `step[g][f]` iff `G` is a summand of `H ∘ F`
/// (left), `F ∘ H` (right), or `H ∘ F ∘ K` (two-sided) for some `H`, `K`.
fn one_step(cat: &BasedCategory, side: CellSide) -> Result<Vec<Vec<bool>>> {
    let n = cat.len();
    let mut step = vec![vec![false; n]; n];
    let ids: Vec<MorphismId> = cat.morphism_ids().collect();
    for &f in &ids {
        for &h in &ids {
            let sums = match side {
                CellSide::Left if cat.composable(h, f) => vec![cat.compose(h, f)?],
                CellSide::Right if cat.composable(f, h) => vec![cat.compose(f, h)?],
                CellSide::TwoSided if cat.composable(h, f) => {
                    let hf = cat.compose(h, f)?;
                    let dom = cat.morphism(f).dom;
                    let mut out = Vec::new();
                    for &k in &ids {
                        if cat.morphism(k).cod == dom {
                            let single = crate::based_cat::Multiset::singleton(k);
                            out.push(cat.compose_sums(&hf, &single)?);
                        }
                    }
                    out
                }
                _ => Vec::new(),
            };
            for s in sums {
                for g in s.support() {
                    step[g.0][f.0] = true;
                }
            }
        }
    }
    Ok(step)
}

fn is_transitive_relation(rel: &[Vec<bool>]) -> bool {
    let n = rel.len();
    (0..n).all(|a| (0..n).all(|b| !rel[a][b] || (0..n).all(|c| !rel[b][c] || rel[a][c])))
}

/// Computes the preorder on one side and its cells. Reflexivity comes from
/// identities; for a valid category the one-step relation is already
/// transitive, which is asserted in debug builds.
pub fn preorder(cat: &BasedCategory, side: CellSide) -> Result<CellStructure> {
    let mut step = one_step(cat, side)?;
    for (i, row) in step.iter_mut().enumerate() {
        row[i] = true;
    }
    debug_assert!(!cat.validate().is_valid() || is_transitive_relation(&step));
    let preorder = Preorder::from_one_step(step);
    let n = cat.len();
    let rank: Vec<usize> = (0..n).collect();
    let cond = preorder.condense(&rank);
    // cells by smallest member name
    let min_name = |c: &Vec<usize>| c.iter().map(|&i| cat.name(MorphismId(i))).min();
    let mut perm: Vec<usize> = (0..cond.classes.len()).collect();
    perm.sort_by(|&a, &b| min_name(&cond.classes[a]).cmp(&min_name(&cond.classes[b])));
    let mut new_index = vec![0; perm.len()];
    for (new, &old) in perm.iter().enumerate() {
        new_index[old] = new;
    }
    let cells: Vec<Vec<MorphismId>> = perm
        .iter()
        .map(|&old| cond.classes[old].iter().map(|&i| MorphismId(i)).collect())
        .collect();
    let cell_of = cond.class_of.iter().map(|&c| new_index[c]).collect();
    let k = perm.len();
    let greater = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| cond.order.greater(perm[a], perm[b]))
                .collect()
        })
        .collect();
    let order = ClassOrder::from_strict(greater);
    debug_assert!(order.is_antisymmetric());
    Ok(CellStructure {
        side,
        preorder,
        cells,
        cell_of,
        order,
    })
}

/// Why a two-sided cell fails to be strongly regular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularityWitness {
    /// Two different left (or right) cells inside `J`, the first above the
    /// second.
    ComparableCells {
        side: CellSide,
        greater: Vec<MorphismId>,
        lesser: Vec<MorphismId>,
    },
    /// A left cell and a right cell inside `J` whose intersection does not
    /// have exactly one element.
    Intersection {
        left: Vec<MorphismId>,
        right: Vec<MorphismId>,
        members: Vec<MorphismId>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongRegularity {
    pub verdict: bool,
    pub witness: Option<RegularityWitness>,
}

fn check_two_sided_cell(cat: &BasedCategory, cell: &[MorphismId]) -> Result<CellStructure> {
    let j = preorder(cat, CellSide::TwoSided)?;
    if cell.is_empty() || j.find_cell(cell).is_none() {
        return Err(Error::precondition("the given set is not a two-sided cell"));
    }
    Ok(j)
}

/// Cells of `side` contained in `cell`, in canonical order.
fn cells_inside(cs: &CellStructure, cell: &[MorphismId]) -> Vec<usize> {
    (0..cs.cells().len())
        .filter(|&c| cs.cells()[c].iter().all(|f| cell.contains(f)))
        .collect()
}

/// Strong regularity of a two-sided cell `J`: distinct left cells in `J` are
/// incomparable, likewise right cells, and each left cell meets each right
/// cell in exactly one 1-morphism.
pub fn is_strongly_regular(cat: &BasedCategory, cell: &[MorphismId]) -> Result<StrongRegularity> {
    check_two_sided_cell(cat, cell)?;
    let left = preorder(cat, CellSide::Left)?;
    let right = preorder(cat, CellSide::Right)?;
    let in_left = cells_inside(&left, cell);
    let in_right = cells_inside(&right, cell);
    for (cs, inside) in [(&left, &in_left), (&right, &in_right)] {
        for &a in inside {
            for &b in inside {
                if cs.order().greater(a, b) {
                    return Ok(StrongRegularity {
                        verdict: false,
                        witness: Some(RegularityWitness::ComparableCells {
                            side: cs.side,
                            greater: cs.cells()[a].clone(),
                            lesser: cs.cells()[b].clone(),
                        }),
                    });
                }
            }
        }
    }
    for &l in &in_left {
        for &r in &in_right {
            let lc = &left.cells()[l];
            let rc = &right.cells()[r];
            let members: Vec<MorphismId> = lc.iter().copied().filter(|f| rc.contains(f)).collect();
            if members.len() != 1 {
                return Ok(StrongRegularity {
                    verdict: false,
                    witness: Some(RegularityWitness::Intersection {
                        left: lc.clone(),
                        right: rc.clone(),
                        members,
                    }),
                });
            }
        }
    }
    Ok(StrongRegularity {
        verdict: true,
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalCondition {
    pub verdict: bool,
    /// Number of summands of `F* ∘ F` lying in `J`, for each `F ∈ J`.
    pub values: Vec<(MorphismId, u64)>,
    /// Right cells inside `J` with their common value, or `None` where the
    /// value is not constant.
    pub per_right_cell: Vec<(Vec<MorphismId>, Option<u64>)>,
}

/// Whether `F ↦ #(summands of F* ∘ F in J)` is constant on the right cells
/// of a strongly regular two-sided cell `J`. With `with_multiplicity` the
/// summands are counted with multiplicity, otherwise distinct ones.
pub fn numerical_condition(
    cat: &BasedCategory,
    cell: &[MorphismId],
    with_multiplicity: bool,
) -> Result<NumericalCondition> {
    cat.involution().ok_or(Error::MissingInvolution)?;
    let sr = is_strongly_regular(cat, cell)?;
    if !sr.verdict {
        return Err(Error::precondition(
            "the numerical condition is only defined for strongly regular cells",
        ));
    }
    numerical_condition_unchecked(cat, cell, with_multiplicity)
}

/// [`numerical_condition`] without the strong-regularity precondition; `cell`
/// must still be a two-sided cell.
pub fn numerical_condition_unchecked(
    cat: &BasedCategory,
    cell: &[MorphismId],
    with_multiplicity: bool,
) -> Result<NumericalCondition> {
    cat.involution().ok_or(Error::MissingInvolution)?;
    check_two_sided_cell(cat, cell)?;
    let mut values = Vec::new();
    let mut by_id = BTreeMap::new();
    for &f in cell {
        let fs = cat.star(f).expect("involution present");
        let product = cat.compose(fs, f)?;
        let v: u64 = product
            .iter()
            .filter(|(h, _)| cell.contains(h))
            .map(|(_, k)| if with_multiplicity { k } else { 1 })
            .sum();
        values.push((f, v));
        by_id.insert(f, v);
    }
    let right = preorder(cat, CellSide::Right)?;
    let mut per_right_cell = Vec::new();
    for r in cells_inside(&right, cell) {
        let members = right.cells()[r].clone();
        let first = by_id[&members[0]];
        let constant = members.iter().all(|f| by_id[f] == first);
        per_right_cell.push((members, constant.then_some(first)));
    }
    Ok(NumericalCondition {
        verdict: per_right_cell.iter().all(|(_, v)| v.is_some()),
        values,
        per_right_cell,
    })
}

/// The cell representation of a left cell `L`: over object `j` the members of
/// `L` with codomain `j`, and `G` acts by `(F′, F) ↦ c_{G,F}^{F′}`.
pub fn cell_rep(cat: &Arc<BasedCategory>, left_cell: &[MorphismId]) -> Result<MatrixRep> {
    let left = preorder(cat, CellSide::Left)?;
    let Some(idx) = left.find_cell(left_cell) else {
        return Err(Error::precondition("the given set is not a left cell"));
    };
    let members = &left.cells()[idx];
    let mut basis = vec![Vec::new(); cat.objects().len()];
    for &f in members {
        basis[cat.morphism(f).cod.0].push(f);
    }
    structure_rep(cat, &basis)
}

/// Cell representations of all left cells, in canonical cell order.
pub fn all_cell_reps(cat: &Arc<BasedCategory>) -> Result<Vec<(Vec<MorphismId>, MatrixRep)>> {
    let left = preorder(cat, CellSide::Left)?;
    left.cells()
        .iter()
        .map(|c| Ok((c.clone(), cell_rep(cat, c)?)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorConsistency {
    pub verdict: bool,
    /// `(F, G)` with `F` sent to zero, `G` not, and `G ≥_J F`.
    pub witness: Option<(MorphismId, MorphismId)>,
}

/// Checks that the 1-morphisms assigned zero matrices are closed upward
/// under `≥_J` among the assigned ones. This covers two members of one
/// two-sided cell of which exactly one is zero.
pub fn annihilator_consistency(
    cat: &BasedCategory,
    partial: &BTreeMap<MorphismId, IntMatrix>,
) -> Result<AnnihilatorConsistency> {
    let j = preorder(cat, CellSide::TwoSided)?;
    for (&f, mf) in partial {
        if !mf.is_zero() {
            continue;
        }
        for (&g, mg) in partial {
            if !mg.is_zero() && j.geq(g, f) {
                return Ok(AnnihilatorConsistency {
                    verdict: false,
                    witness: Some((f, g)),
                });
            }
        }
    }
    Ok(AnnihilatorConsistency {
        verdict: true,
        witness: None,
    })
}

/// Names of a list of 1-morphisms.
pub fn names(cat: &BasedCategory, ids: &[MorphismId]) -> Vec<String> {
    ids.iter().map(|&f| String::from(cat.name(f))).collect()
}
