mod common;

use std::collections::BTreeSet;

use catrep_core::based_cat::{build_cartan_category, cartan_name, Multiset};
use catrep_core::cells::{is_strongly_regular, numerical_condition, preorder, CellSide};
use catrep_core::classify::{classify_group_reps, classify_quasi_idempotent, enumerate_subgroups};
use catrep_core::group::MultTable;
use catrep_core::matrep::{is_transitive, reps_equivalent, validate_rep};
use catrep_core::matrix::IntMatrix;
use catrep_core::pfexact::{column_sum_bounds, corollary_check, quasi_idempotent_check};
use catrep_core::random::{random_cartan_input, random_pf_matrix};
use common::{brute_key, minor_rank, perms};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn conj_min(x: &IntMatrix) -> Vec<i64> {
    perms(x.rows())
        .iter()
        .map(|p| {
            let mut v = vec![0; x.rows() * x.rows()];
            for r in 0..x.rows() {
                for c in 0..x.rows() {
                    v[p[r] * x.rows() + p[c]] = x.get(r, c);
                }
            }
            v
        })
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn cartan_categories_match_the_composition_formula(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, sigma) = random_cartan_input(&mut rng, 3, 3);
        let n = c.rows();
        let cat = build_cartan_category(&c, Some(&sigma)).unwrap();
        prop_assert!(cat.validate().is_valid());
        let f = |i, j| cat.lookup(&cartan_name(n, i, j)).unwrap();
        for (i, j, s, t) in (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).flat_map(move |s| (0..n).map(move |t| (i, j, s, t))))) {
            let expected = Multiset::from_pairs([(f(i, t), c.get(j, s) as u64)]);
            prop_assert_eq!(cat.compose(f(i, j), f(s, t)).unwrap(), expected);
        }
        let set = |v: Vec<_>| v.into_iter().collect::<BTreeSet<_>>();
        let cells_of = |side| {
            let cs = preorder(&cat, side).unwrap();
            cs.cells().iter().filter(|c| !cat.morphism(c[0]).is_identity).map(|c| set(c.clone())).collect::<BTreeSet<_>>()
        };
        let lefts: BTreeSet<_> = (0..n).map(|j| set((0..n).map(|i| f(i, j)).collect())).collect();
        let rights: BTreeSet<_> = (0..n).map(|i| set((0..n).map(|j| f(i, j)).collect())).collect();
        prop_assert_eq!(cells_of(CellSide::Left), lefts);
        prop_assert_eq!(cells_of(CellSide::Right), rights);
        let j: Vec<_> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        prop_assert!(is_strongly_regular(&cat, &j).unwrap().verdict);
        let nc = numerical_condition(&cat, &j, true).unwrap();
        prop_assert!(nc.verdict);
        for i in 0..n {
            for jj in 0..n {
                let v = nc.values.iter().find(|(g, _)| *g == f(i, jj)).unwrap().1;
                prop_assert_eq!(v as i64, c.get(i, i));
            }
        }
    }

    #[test]
    fn rank_matches_largest_nonvanishing_minor(
        rows in 1usize..=4,
        cols in 1usize..=4,
        entries in proptest::collection::vec(-3i64..=3, 16),
    ) {
        let m = IntMatrix::new(rows, cols, entries[..rows * cols].to_vec()).unwrap();
        prop_assert_eq!(m.rank(), minor_rank(&m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn column_sums_bracket_m_and_equality_forces_equal_columns(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, m) = random_pf_matrix(&mut rng, 4, 6);
        let q = quasi_idempotent_check(&a, m).unwrap();
        prop_assert!(q.holds && q.positive && q.rank1);
        prop_assert_eq!(a.trace(), i128::from(m));
        let (lo, hi) = column_sum_bounds(&a).unwrap();
        prop_assert!(lo <= i128::from(m) && i128::from(m) <= hi);
        let equal_cols = (1..a.cols()).all(|c| a.column(c) == a.column(0));
        if lo == i128::from(m) || hi == i128::from(m) {
            prop_assert!(equal_cols);
        }
        let cc = corollary_check(&a, m).unwrap();
        prop_assert_eq!(cc.applicable, lo == i128::from(m) || hi == i128::from(m));
        prop_assert_eq!(cc.columns_equal, equal_cols);
    }
}

#[test]
fn quasi_idempotent_classes_agree_with_brute_force() {
    for m in 1..=4i64 {
        let report = classify_quasi_idempotent(m, (m as usize).min(3)).unwrap();
        let got: BTreeSet<Vec<i64>> = report.solutions.iter().map(conj_min).collect();
        assert_eq!(got.len(), report.solutions.len(), "duplicates for m = {m}");
        for x in &report.solutions {
            let q = quasi_idempotent_check(x, m).unwrap();
            assert!(q.holds && q.positive && q.rank1);
            assert_eq!(x.trace(), i128::from(m));
        }
        if m > 3 {
            continue;
        }
        let mut expected = BTreeSet::new();
        for k in 1..=m as usize {
            let total = (m as usize).pow((k * k) as u32);
            for code in 0..total {
                let mut code = code;
                let entries: Vec<i64> = (0..k * k)
                    .map(|_| {
                        let e = (code % m as usize) as i64 + 1;
                        code /= m as usize;
                        e
                    })
                    .collect();
                let x = IntMatrix::new(k, k, entries).unwrap();
                if x.checked_mul(&x).unwrap() == x.checked_scale(m).unwrap() {
                    expected.insert(conj_min(&x));
                }
            }
        }
        assert_eq!(got, expected, "m = {m}");
    }
}

/// Subgroups as closed subsets containing the identity, by checking every
/// subset.
fn subsets_closed(table: &MultTable) -> Vec<Vec<usize>> {
    let n = table.order();
    let e = table.identity().unwrap();
    (0u32..1 << n)
        .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|h| {
            h.contains(&e)
                && h.iter()
                    .all(|&a| h.iter().all(|&b| h.contains(&table.mul(a, b))))
        })
        .collect()
}

#[test]
fn group_classification() {
    for (name, subgroups, classes) in [("C2", 2, 2), ("S3", 6, 4), ("D4", 10, 8), ("V4", 5, 5)] {
        let table = MultTable::named(name).unwrap();
        let brute = subsets_closed(&table);
        assert_eq!(brute.len(), subgroups, "{name}");
        let s = enumerate_subgroups(&table).unwrap();
        let got: BTreeSet<_> = s.all.iter().cloned().collect();
        assert_eq!(got, brute.into_iter().collect::<BTreeSet<_>>(), "{name}");
        assert_eq!(s.classes.len(), classes, "{name}");

        let reps = classify_group_reps(&table).unwrap();
        assert_eq!(reps.len(), classes);
        for r in &reps {
            assert!(validate_rep(&r.rep).is_valid());
            assert!(is_transitive(&r.rep));
        }
        for (a, ra) in reps.iter().enumerate() {
            for rb in &reps[a + 1..] {
                assert!(reps_equivalent(&ra.rep, &rb.rep).unwrap().is_none());
                if ra.rep.dimension() <= 6 {
                    assert_ne!(brute_key(&ra.rep), brute_key(&rb.rep));
                }
            }
        }
    }
}
