//! Action preorder, coideal subquotients, complete filtrations and the weak
//! Jordan–Hölder comparison.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::equivalence::reps_equivalent;
use super::{validate_rep, MatrixRep};
use crate::error::{Error, Result};
use crate::order::{Condensation, Preorder};

/// Filtrations enumerated before [`weak_jh_verify`] switches to sampling.
pub const DEFAULT_FILTRATION_CAP: usize = 10_000;

/// The preorder `X ≥ Y` iff `X` is a summand of `F Y` for some `F`, on the
/// global numbering of indecomposables, with its classes and class order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionPreorder {
    pub preorder: Preorder,
    pub condensation: Condensation,
}

impl ActionPreorder {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.condensation.classes
    }

    pub fn class_count(&self) -> usize {
        self.condensation.classes.len()
    }

    /// Indecomposables (global indices) covered by a set of classes.
    pub fn members(&self, classes: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = classes
            .iter()
            .flat_map(|&c| self.condensation.classes[c].iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

pub fn action_preorder(rep: &MatrixRep) -> ActionPreorder {
    let n = rep.dimension();
    let offsets = rep.offsets();
    let cat = rep.category();
    let mut rel = vec![vec![false; n]; n];
    for id in cat.morphism_ids() {
        let f = cat.morphism(id);
        let m = rep.matrix(id);
        let (ro, co) = (offsets[f.cod.0], offsets[f.dom.0]);
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if m.get(r, c) > 0 {
                    rel[ro + r][co + c] = true;
                }
            }
        }
    }
    let preorder = Preorder::from_one_step(rel);
    let rank: Vec<usize> = (0..n).collect();
    let condensation = preorder.condense(&rank);
    debug_assert!(condensation.order.is_antisymmetric());
    ActionPreorder {
        preorder,
        condensation,
    }
}

pub fn is_transitive(rep: &MatrixRep) -> bool {
    rep.dimension() > 0 && action_preorder(rep).class_count() == 1
}

/// All coideals of the class poset, smallest first.
pub fn coideals(rep: &MatrixRep) -> Vec<Vec<usize>> {
    action_preorder(rep).condensation.order.coideals()
}

/// The subquotient attached to coideals `Q ⊆ R`: the indecomposables of the
/// classes in `R \ Q` with the corresponding submatrices.
pub fn subquotient(rep: &MatrixRep, q: &[usize], r: &[usize]) -> Result<MatrixRep> {
    subquotient_with(rep, &action_preorder(rep), q, r)
}

fn subquotient_with(
    rep: &MatrixRep,
    ap: &ActionPreorder,
    q: &[usize],
    r: &[usize],
) -> Result<MatrixRep> {
    let order = &ap.condensation.order;
    let k = ap.class_count();
    if q.iter().chain(r).any(|&c| c >= k) {
        return Err(Error::precondition(format!(
            "class index out of range (have {k})"
        )));
    }
    if !order.is_coideal(q) || !order.is_coideal(r) {
        return Err(Error::precondition("subquotient bounds must be coideals"));
    }
    if !q.iter().all(|c| r.contains(c)) {
        return Err(Error::precondition(
            "lower coideal is not contained in the upper one",
        ));
    }
    let difference: Vec<usize> = r.iter().copied().filter(|c| !q.contains(c)).collect();
    let out = rep.restrict(&ap.members(&difference));
    debug_assert!(!validate_rep(rep).is_valid() || validate_rep(&out).is_valid());
    Ok(out)
}

/// A complete filtration, stored as the order in which classes are added:
/// `Q_t` is the set of the first `t` classes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Filtration {
    pub steps: Vec<usize>,
}

impl Filtration {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn coideal(&self, t: usize) -> Vec<usize> {
        let mut q = self.steps[..t].to_vec();
        q.sort_unstable();
        q
    }

    /// `Q_0 ⊂ Q_1 ⊂ … ⊂ Q_k`.
    pub fn chain(&self) -> Vec<Vec<usize>> {
        (0..=self.len()).map(|t| self.coideal(t)).collect()
    }
}

/// Every complete filtration, up to `cap`; the flag reports truncation.
pub fn complete_filtrations(rep: &MatrixRep, cap: usize) -> (Vec<Filtration>, bool) {
    let ap = action_preorder(rep);
    let (ext, truncated) = ap.condensation.order.top_down_extensions(cap);
    (
        ext.into_iter().map(|steps| Filtration { steps }).collect(),
        truncated,
    )
}

/// The subquotients `Q_{t-1} ⊂ Q_t` of a complete filtration, in order.
pub fn jh_subquotients(rep: &MatrixRep, f: &Filtration) -> Result<Vec<MatrixRep>> {
    let ap = action_preorder(rep);
    jh_with(rep, &ap, f)
}

fn jh_with(rep: &MatrixRep, ap: &ActionPreorder, f: &Filtration) -> Result<Vec<MatrixRep>> {
    let k = ap.class_count();
    let mut sorted = f.steps.clone();
    sorted.sort_unstable();
    if sorted != (0..k).collect::<Vec<_>>() {
        return Err(Error::precondition(
            "filtration must add every class exactly once",
        ));
    }
    let mut out = Vec::with_capacity(k);
    for t in 1..=k {
        let sq = subquotient_with(rep, ap, &f.coideal(t - 1), &f.coideal(t))?;
        debug_assert!(super::is_transitive(&sq));
        out.push(sq);
    }
    Ok(out)
}

/// Outcome of comparing the subquotients of all complete filtrations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakJhReport {
    pub verdict: bool,
    /// Set when there were more filtrations than the cap and a random sample
    /// was compared instead.
    pub sampled: bool,
    pub filtrations: Vec<Filtration>,
    /// For filtration `k ≥ 1`, `matchings[k-1][t]` is the step of filtration 0
    /// whose subquotient is equivalent to step `t` of filtration `k`.
    pub matchings: Vec<Vec<usize>>,
    /// First filtration (index into `filtrations`) whose subquotients could
    /// not be matched with those of filtration 0.
    pub counterexample: Option<usize>,
}

/// Checks that every complete filtration has the same subquotients up to
/// matrix equivalence. Beyond `cap` filtrations, `cap` random ones drawn from
/// a ChaCha generator seeded with `seed` are compared.
pub fn weak_jh_verify(rep: &MatrixRep, cap: usize, seed: u64) -> Result<WeakJhReport> {
    let ap = action_preorder(rep);
    let order = &ap.condensation.order;
    let (ext, truncated) = order.top_down_extensions(cap);
    let filtrations: Vec<Filtration> = if truncated {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..cap.max(2))
            .map(|_| Filtration {
                steps: order.random_top_down_extension(&mut rng),
            })
            .collect()
    } else {
        ext.into_iter().map(|steps| Filtration { steps }).collect()
    };

    let reference = jh_with(rep, &ap, &filtrations[0])?;
    let mut matchings = Vec::new();
    let mut counterexample = None;
    for (k, f) in filtrations.iter().enumerate().skip(1) {
        let quotients = jh_with(rep, &ap, f)?;
        match match_multisets(&quotients, &reference)? {
            Some(m) => matchings.push(m),
            None => {
                counterexample = Some(k);
                break;
            }
        }
    }
    Ok(WeakJhReport {
        verdict: counterexample.is_none(),
        sampled: truncated,
        filtrations,
        matchings,
        counterexample,
    })
}

/// A bijection `σ` with `left[t] ≃ right[σ(t)]`, if one exists.
fn match_multisets(left: &[MatrixRep], right: &[MatrixRep]) -> Result<Option<Vec<usize>>> {
    if left.len() != right.len() {
        return Ok(None);
    }
    let n = left.len();
    let mut eq = vec![vec![false; n]; n];
    for (a, l) in left.iter().enumerate() {
        for (b, r) in right.iter().enumerate() {
            eq[a][b] = reps_equivalent(l, r)?.is_some();
        }
    }
    let mut used = vec![false; n];
    let mut sigma = vec![0; n];
    fn go(t: usize, eq: &[Vec<bool>], used: &mut [bool], sigma: &mut [usize]) -> bool {
        if t == eq.len() {
            return true;
        }
        for b in 0..eq.len() {
            if eq[t][b] && !used[b] {
                used[b] = true;
                sigma[t] = b;
                if go(t + 1, eq, used, sigma) {
                    return true;
                }
                used[b] = false;
            }
        }
        false
    }
    Ok(go(0, &eq, &mut used, &mut sigma).then_some(sigma))
}
