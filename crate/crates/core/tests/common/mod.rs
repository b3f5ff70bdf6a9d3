#![allow(dead_code)]

use catrep_core::based_cat::{BasedCategory, MorphismId};
use catrep_core::matrep::MatrixRep;
use catrep_core::matrix::IntMatrix;

/// All permutations of `0..n`, by recursion.
pub fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest relabelling of a representation over all per-object
/// permutations. Two reps are permutation-conjugate iff keys agree.
pub fn brute_key(rep: &MatrixRep) -> (Vec<usize>, Vec<Vec<Vec<i64>>>) {
    let sizes: Vec<usize> = rep.ind_lists().iter().map(Vec::len).collect();
    let cat = rep.category();
    let mut best: Option<Vec<Vec<Vec<i64>>>> = None;
    let mut combos: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for &n in &sizes {
        let ps = perms(n);
        combos = combos
            .into_iter()
            .flat_map(|c| {
                ps.iter().map(move |p| {
                    let mut c = c.clone();
                    c.push(p.clone());
                    c
                })
            })
            .collect();
    }
    for combo in combos {
        let ms: Vec<Vec<Vec<i64>>> = cat
            .morphism_ids()
            .map(|id| {
                let f = cat.morphism(id);
                let (pr, pc) = (&combo[f.cod.0], &combo[f.dom.0]);
                let m = rep.matrix(id);
                let mut out = vec![vec![0; m.cols()]; m.rows()];
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        out[pr[r]][pc[c]] = m.get(r, c);
                    }
                }
                out
            })
            .collect();
        if best.as_ref().is_none_or(|b| ms < *b) {
            best = Some(ms);
        }
    }
    (sizes, best.unwrap_or_default())
}

/// Rank as the size of the largest non-vanishing minor.
pub fn minor_rank(m: &IntMatrix) -> usize {
    fn det(rows: &[Vec<i128>]) -> i128 {
        let n = rows.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<i128>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != c)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * rows[0][c] * det(&minor)
            })
            .sum()
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..(1 << n))
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
            .collect()
    }
    for k in (1..=m.rows().min(m.cols())).rev() {
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let sub: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| i128::from(m.get(r, c))).collect())
                    .collect();
                if det(&sub) != 0 {
                    return k;
                }
            }
        }
    }
    0
}

/// `G ≥ F` for the one-step left relation, read straight from the stored
/// products.
pub fn left_step(cat: &BasedCategory, g: MorphismId, f: MorphismId) -> bool {
    cat.morphism_ids()
        .any(|h| cat.composable(h, f) && cat.compose(h, f).unwrap().get(g) > 0)
}

/// `[F][G] = Σ_H c_{F,G}^H [H]` for every composable pair, by plain loops.
pub fn law_holds(cat: &BasedCategory, ms: &[IntMatrix]) -> bool {
    for f in cat.morphism_ids() {
        for g in cat.morphism_ids() {
            if !cat.composable(f, g) {
                continue;
            }
            let (a, b) = (&ms[f.0], &ms[g.0]);
            let sum = cat.compose(f, g).unwrap();
            for r in 0..a.rows() {
                for c in 0..b.cols() {
                    let lhs: i64 = (0..a.cols()).map(|k| a.get(r, k) * b.get(k, c)).sum();
                    let rhs: i64 = sum.iter().map(|(h, k)| k as i64 * ms[h.0].get(r, c)).sum();
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}
