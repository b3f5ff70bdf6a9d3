//! Finite preorders: closure, condensation into equivalence classes, and the
//! coideal / linear-extension combinatorics of the induced partial order.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

/// A preorder on `0..n`, stored as its full reflexive-transitive relation.
/// `geq[a][b]` holds when `a ≥ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    geq: Vec<Vec<bool>>,
}

impl Preorder {
    /// Reflexive-transitive closure of a one-step relation.
    pub fn from_one_step(mut rel: Vec<Vec<bool>>) -> Self {
        let n = rel.len();
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if rel[i][k] {
                    for j in 0..n {
                        if rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        Self { geq: rel }
    }

    pub fn len(&self) -> usize {
        self.geq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.geq.is_empty()
    }

    #[inline]
    pub fn geq(&self, a: usize, b: usize) -> bool {
        self.geq[a][b]
    }

    pub fn equivalent(&self, a: usize, b: usize) -> bool {
        self.geq[a][b] && self.geq[b][a]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.geq
    }

    /// Splits into mutual-comparability classes. `rank[i]` is the position of
    /// element `i` in the desired reporting order; members of a class and the
    /// classes themselves are sorted by it.
    pub fn condense(&self, rank: &[usize]) -> Condensation {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| rank[i]);
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &i in &order {
            if class_of[i] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let members: Vec<usize> = order
                .iter()
                .copied()
                .filter(|&j| self.equivalent(i, j))
                .collect();
            for &j in &members {
                class_of[j] = idx;
            }
            classes.push(members);
        }
        let k = classes.len();
        let mut greater = vec![vec![false; k]; k];
        for a in 0..k {
            for b in 0..k {
                greater[a][b] = a != b && self.geq(classes[a][0], classes[b][0]);
            }
        }
        Condensation {
            classes,
            class_of,
            order: ClassOrder { greater },
        }
    }
}

/// Classes of a preorder together with the induced partial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condensation {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub order: ClassOrder,
}

/// Strict partial order on class indices: `greater[a][b]` iff `a > b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassOrder {
    greater: Vec<Vec<bool>>,
}

impl ClassOrder {
    pub fn from_strict(greater: Vec<Vec<bool>>) -> Self {
        Self { greater }
    }

    pub fn len(&self) -> usize {
        self.greater.len()
    }

    pub fn is_empty(&self) -> bool {
        self.greater.is_empty()
    }

    #[inline]
    pub fn greater(&self, a: usize, b: usize) -> bool {
        self.greater[a][b]
    }

    /// All `(a, b)` with `a > b`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.greater[a][b])
            .collect()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.pairs().iter().all(|&(a, b)| !self.greater[b][a])
    }

    pub fn is_coideal(&self, set: &[usize]) -> bool {
        set.iter()
            .all(|&x| (0..self.len()).all(|y| !self.greater[y][x] || set.contains(&y)))
    }

    /// Every upward-closed subset, sorted by size then lexicographically.
    pub fn coideals(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let topo = self.top_down_order();
        let mut out = Vec::new();
        let mut chosen = vec![false; n];
        self.coideals_rec(&topo, 0, &mut chosen, &mut out);
        for c in &mut out {
            c.sort_unstable();
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn coideals_rec(
        &self,
        topo: &[usize],
        pos: usize,
        chosen: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == topo.len() {
            out.push((0..chosen.len()).filter(|&i| chosen[i]).collect());
            return;
        }
        let x = topo[pos];
        self.coideals_rec(topo, pos + 1, chosen, out);
        // every class above x was decided earlier in the top-down order
        if (0..self.len()).all(|y| !self.greater[y][x] || chosen[y]) {
            chosen[x] = true;
            self.coideals_rec(topo, pos + 1, chosen, out);
            chosen[x] = false;
        }
    }

    /// One linear extension listing larger classes first.
    fn top_down_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut done = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n)
                .find(|&x| !done[x] && self.is_available(x, &done))
                .expect("class order must be acyclic");
            done[next] = true;
            out.push(next);
        }
        out
    }

    fn is_available(&self, x: usize, done: &[bool]) -> bool {
        (0..self.len()).all(|y| !self.greater[y][x] || done[y])
    }

    /// Sequences of classes in which every class appears after all classes
    /// above it, i.e. the orders in which a complete chain of coideals picks
    /// up classes. Stops after `cap` results; the flag reports truncation.
    pub fn top_down_extensions(&self, cap: usize) -> (Vec<Vec<usize>>, bool) {
        let n = self.len();
        let mut out = Vec::new();
        let mut done = vec![false; n];
        let mut current = Vec::with_capacity(n);
        let truncated = self.extensions_rec(&mut done, &mut current, &mut out, cap);
        (out, truncated)
    }

    fn extensions_rec(
        &self,
        done: &mut Vec<bool>,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> bool {
        let n = self.len();
        if current.len() == n {
            if out.len() == cap {
                return true;
            }
            out.push(current.clone());
            return false;
        }
        for x in 0..n {
            if !done[x] && self.is_available(x, done) {
                done[x] = true;
                current.push(x);
                let stop = self.extensions_rec(done, current, out, cap);
                current.pop();
                done[x] = false;
                if stop {
                    return true;
                }
            }
        }
        false
    }

    /// A random top-down extension, choosing uniformly among the available
    /// classes at each step.
    pub fn random_top_down_extension<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<usize> {
        let n = self.len();
        let mut done = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let available: Vec<usize> = (0..n)
                .filter(|&x| !done[x] && self.is_available(x, &done))
                .collect();
            let x = available[rng.random_range(0..available.len())];
            done[x] = true;
            out.push(x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn antichain(n: usize) -> ClassOrder {
        ClassOrder::from_strict(vec![vec![false; n]; n])
    }

    fn chain(n: usize) -> ClassOrder {
        // class 0 is the top
        ClassOrder::from_strict((0..n).map(|a| (0..n).map(|b| a < b).collect()).collect())
    }

    #[test]
    fn closure_is_transitive() {
        let mut rel = vec![vec![false; 3]; 3];
        rel[2][1] = true;
        rel[1][0] = true;
        let p = Preorder::from_one_step(rel);
        assert!(p.geq(2, 0));
        assert!(!p.geq(0, 2));
        assert!(p.geq(1, 1));
    }

    #[test]
    fn condensation_groups_cycles() {
        let mut rel = vec![vec![false; 3]; 3];
        rel[0][1] = true;
        rel[1][0] = true;
        rel[2][0] = true;
        let c = Preorder::from_one_step(rel).condense(&[0, 1, 2]);
        assert_eq!(c.classes, vec![vec![0, 1], vec![2]]);
        assert!(c.order.greater(1, 0));
        assert!(c.order.is_antisymmetric());
    }

    #[test]
    fn coideals_of_small_posets() {
        assert_eq!(chain(2).coideals(), vec![vec![], vec![0], vec![0, 1]]);
        assert_eq!(antichain(2).coideals().len(), 4);
        assert_eq!(antichain(1).coideals(), vec![vec![], vec![0]]);
    }

    #[test]
    fn extensions_of_small_posets() {
        assert_eq!(chain(3).top_down_extensions(10).0, vec![vec![0, 1, 2]]);
        let (ext, truncated) = antichain(3).top_down_extensions(100);
        assert_eq!(ext.len(), 6);
        assert!(!truncated);
        let (ext, truncated) = antichain(3).top_down_extensions(4);
        assert_eq!(ext.len(), 4);
        assert!(truncated);
    }
}
