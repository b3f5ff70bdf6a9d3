//! Subgroups up to conjugacy and the transitive permutation representations
//! of a group category on cosets.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::based_cat::{build_group_category, BasedCategory};
use crate::error::Result;
use crate::group::MultTable;
use crate::matrep::MatrixRep;
use crate::matrix::IntMatrix;

/// All subgroups (sorted element lists, by size then lexicographically) and
/// their conjugacy classes as index lists; the first index of each class is
/// its representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroups {
    pub all: Vec<Vec<usize>>,
    pub classes: Vec<Vec<usize>>,
}

impl Subgroups {
    pub fn representatives(&self) -> Vec<&[usize]> {
        self.classes
            .iter()
            .map(|c| self.all[c[0]].as_slice())
            .collect()
    }
}

fn by_size_then_lex(a: &Vec<usize>, b: &Vec<usize>) -> core::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Every subgroup, reached from the trivial one by repeatedly adjoining an
/// element and closing; only orders dividing `|G|` can occur.
pub fn enumerate_subgroups(table: &MultTable) -> Result<Subgroups> {
    let e = table.check_group()?;
    let n = table.order();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = vec![vec![e]];
    seen.insert(vec![e]);
    while let Some(h) = queue.pop() {
        for g in 0..n {
            if h.binary_search(&g).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(g);
            let k = table.closure(&gens);
            debug_assert_eq!(n % k.len(), 0);
            if seen.insert(k.clone()) {
                queue.push(k);
            }
        }
    }
    let mut all: Vec<Vec<usize>> = seen.into_iter().collect();
    all.sort_by(by_size_then_lex);

    let inv = table.inverses();
    let mut class_of = vec![usize::MAX; all.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..all.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let conjugates: BTreeSet<Vec<usize>> = (0..n)
            .map(|g| {
                let mut c: Vec<usize> = all[i]
                    .iter()
                    .map(|&h| table.mul(table.mul(g, h), inv[g]))
                    .collect();
                c.sort_unstable();
                c
            })
            .collect();
        let members: Vec<usize> = (0..all.len())
            .filter(|&j| conjugates.contains(&all[j]))
            .collect();
        for &j in &members {
            class_of[j] = classes.len();
        }
        classes.push(members);
    }
    Ok(Subgroups { all, classes })
}

/// The representation on `G/H` for one subgroup class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRep {
    pub subgroup: Vec<usize>,
    pub rep: MatrixRep,
}

/// Left cosets `gH`, each sorted, ordered by smallest element.
fn cosets(table: &MultTable, h: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for g in 0..table.order() {
        if out.iter().any(|c| c.contains(&g)) {
            continue;
        }
        let mut c: Vec<usize> = h.iter().map(|&x| table.mul(g, x)).collect();
        c.sort_unstable();
        out.push(c);
    }
    out
}

/// Permutation matrices of left translation on `G/H`: entry `(xH, yH)` of
/// `[F_g]` is 1 iff `g·yH = xH`.
pub fn coset_rep(cat: &Arc<BasedCategory>, table: &MultTable, h: &[usize]) -> Result<MatrixRep> {
    let cs = cosets(table, h);
    let coset_of = |g: usize| cs.iter().position(|c| c.contains(&g)).expect("partition");
    let labels: Vec<String> = cs
        .iter()
        .map(|c| format!("{}H", table.label(c[0])))
        .collect();
    let k = cs.len();
    let matrices = (0..table.order())
        .map(|g| {
            let mut m = IntMatrix::zeros(k, k);
            for (y, c) in cs.iter().enumerate() {
                m.set(coset_of(table.mul(g, c[0])), y, 1);
            }
            m
        })
        .collect();
    MatrixRep::new(cat.clone(), vec![labels], matrices)
}

/// One transitive representation per conjugacy class of subgroups; the
/// matrices are those of the representations `M_{H,A}` for any choice of `A`.
pub fn classify_group_reps(table: &MultTable) -> Result<Vec<GroupRep>> {
    let cat = Arc::new(build_group_category(table)?);
    let subgroups = enumerate_subgroups(table)?;
    subgroups
        .representatives()
        .into_iter()
        .map(|h| {
            Ok(GroupRep {
                subgroup: h.to_vec(),
                rep: coset_rep(&cat, table, h)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrep::{is_transitive, reps_equivalent, validate_rep};

    #[test]
    fn subgroup_counts() {
        for (name, subgroups, classes) in [("C2", 2, 2), ("S3", 6, 4), ("D4", 10, 8), ("V4", 5, 5)]
        {
            let s = enumerate_subgroups(&MultTable::named(name).unwrap()).unwrap();
            assert_eq!(
                (s.all.len(), s.classes.len()),
                (subgroups, classes),
                "{name}"
            );
        }
    }

    #[test]
    fn extreme_subgroups() {
        let g = MultTable::symmetric(3);
        let reps = classify_group_reps(&g).unwrap();
        assert_eq!(reps.len(), 4);
        // trivial subgroup first: regular representation
        assert_eq!(reps[0].rep.dimension(), 6);
        let last = reps.last().unwrap();
        assert_eq!(last.subgroup.len(), 6);
        assert!(last
            .rep
            .matrices()
            .iter()
            .all(|m| *m == IntMatrix::identity(1)));
        for r in &reps {
            assert!(validate_rep(&r.rep).is_valid());
            assert!(is_transitive(&r.rep));
        }
    }

    #[test]
    fn conjugate_subgroups_give_equivalent_reps() {
        let g = MultTable::symmetric(3);
        let cat = Arc::new(build_group_category(&g).unwrap());
        let s = enumerate_subgroups(&g).unwrap();
        let order2 = s.classes.iter().find(|c| s.all[c[0]].len() == 2).unwrap();
        assert_eq!(order2.len(), 3);
        let a = coset_rep(&cat, &g, &s.all[order2[0]]).unwrap();
        let b = coset_rep(&cat, &g, &s.all[order2[1]]).unwrap();
        assert!(reps_equivalent(&a, &b).unwrap().is_some());
    }
}
