//! Matrix equivalence of representations: simultaneous relabelling of the
//! indecomposables over each object.

use alloc::vec;
use alloc::vec::Vec;

use super::{same_category, MatrixRep};
use crate::based_cat::ObjectId;
use crate::error::{Error, Result};

/// Searches for permutations `P_i`, one per object, with
/// `P_j [F]₁ P_i⁻¹ = [F]₂` for every `F: i → j`. `perms[i][k]` is the
/// position in the second representation of indecomposable `k` of the first.
pub fn reps_equivalent(a: &MatrixRep, b: &MatrixRep) -> Result<Option<Vec<Vec<usize>>>> {
    if !same_category(a.category_arc(), b.category_arc()) {
        return Err(Error::CategoryMismatch);
    }
    let n_obj = a.ind_lists().len();
    if (0..n_obj).any(|i| a.ind(ObjectId(i)).len() != b.ind(ObjectId(i)).len()) {
        return Ok(None);
    }
    let sig_a = signatures(a);
    let sig_b = signatures(b);
    let layout = a.layout();
    let n = layout.len();
    {
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return Ok(None);
        }
    }
    let offsets = b.offsets();
    let mut search = Search {
        a,
        b,
        sig_a: &sig_a,
        sig_b: &sig_b,
        layout: &layout,
        offsets: &offsets,
        image: vec![usize::MAX; n],
        taken: vec![false; n],
    };
    if !search.assign(0) {
        return Ok(None);
    }
    let mut perms: Vec<Vec<usize>> = (0..n_obj)
        .map(|i| vec![0; a.ind(ObjectId(i)).len()])
        .collect();
    for (g, &(obj, k)) in layout.iter().enumerate() {
        perms[obj.0][k] = search.image[g] - offsets[obj.0];
    }
    Ok(Some(perms))
}

/// Relabelling-invariant data of each indecomposable: its object, and per
/// 1-morphism the sorted column it spans (as source) and row (as target).
type Signature = (usize, Vec<Vec<i64>>);

fn signatures(rep: &MatrixRep) -> Vec<Signature> {
    let cat = rep.category();
    rep.layout()
        .into_iter()
        .map(|(obj, k)| {
            let mut parts = Vec::new();
            for id in cat.morphism_ids() {
                let f = cat.morphism(id);
                let m = rep.matrix(id);
                if f.dom == obj {
                    let mut col = m.column(k);
                    col.sort_unstable();
                    parts.push(col);
                }
                if f.cod == obj {
                    let mut row = m.row(k).to_vec();
                    row.sort_unstable();
                    parts.push(row);
                }
            }
            (obj.0, parts)
        })
        .collect()
}

struct Search<'a> {
    a: &'a MatrixRep,
    b: &'a MatrixRep,
    sig_a: &'a [Signature],
    sig_b: &'a [Signature],
    layout: &'a [(ObjectId, usize)],
    offsets: &'a [usize],
    image: Vec<usize>,
    taken: Vec<bool>,
}

impl Search<'_> {
    fn assign(&mut self, g: usize) -> bool {
        if g == self.layout.len() {
            return true;
        }
        let (obj, _) = self.layout[g];
        let start = self.offsets[obj.0];
        let end = start + self.b.ind(obj).len();
        for target in start..end {
            if self.taken[target] || self.sig_a[g] != self.sig_b[target] {
                continue;
            }
            self.image[g] = target;
            if self.consistent(g) {
                self.taken[target] = true;
                if self.assign(g + 1) {
                    return true;
                }
                self.taken[target] = false;
            }
        }
        self.image[g] = usize::MAX;
        false
    }

    /// Entries between `g` and every earlier-assigned indecomposable agree.
    fn consistent(&self, g: usize) -> bool {
        let cat = self.a.category();
        let local = |x: usize| self.layout[x].1;
        let local_b = |x: usize| {
            let (obj, _) = self.layout[x];
            self.image[x] - self.offsets[obj.0]
        };
        let (og, _) = self.layout[g];
        for id in cat.morphism_ids() {
            let f = cat.morphism(id);
            let (ma, mb) = (self.a.matrix(id), self.b.matrix(id));
            for h in 0..=g {
                let (oh, _) = self.layout[h];
                // g as source, h as target
                if f.dom == og
                    && f.cod == oh
                    && ma.get(local(h), local(g)) != mb.get(local_b(h), local_b(g))
                {
                    return false;
                }
                // h as source, g as target
                if f.dom == oh
                    && f.cod == og
                    && ma.get(local(g), local(h)) != mb.get(local_b(g), local_b(h))
                {
                    return false;
                }
            }
        }
        true
    }
}
