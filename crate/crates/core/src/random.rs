//! Seeded generators of small test data: categories with at most four
//! 1-morphisms together with representations of them, Cartan inputs with a
//! compatible involution, and positive rank-one quasi-idempotent matrices.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::based_cat::{
    build_cartan_category, build_dihedral_soergel, build_group_category, build_monoid_category,
    quasi_idempotent_category, BasedCategory, CategoryBuilder, MorphismId, Multiset, ObjectId,
    OneMorphism, CLUB,
};
use crate::cells::all_cell_reps;
use crate::classify::{
    classify_group_reps, enumerate_matrix_solutions, MatrixConstraintSet, Normalization,
    Positivity, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::group::MultTable;
use crate::matrep::{coideals, direct_sum, principal_rep, subquotient, MatrixRep};
use crate::matrix::IntMatrix;

/// A category and a stock of representations from which [`RepSource::sample`]
/// assembles random ones.
#[derive(Clone, Debug)]
pub struct RepSource {
    pub category: Arc<BasedCategory>,
    pub pieces: Vec<MatrixRep>,
}

impl RepSource {
    /// Principal and cell representations are always included.
    pub fn new(category: Arc<BasedCategory>, extra: Vec<MatrixRep>) -> Result<Self> {
        let mut pieces = Vec::new();
        for i in 0..category.objects().len() {
            pieces.push(principal_rep(&category, ObjectId(i))?);
        }
        pieces.extend(all_cell_reps(&category)?.into_iter().map(|(_, r)| r));
        pieces.extend(extra);
        Ok(Self { category, pieces })
    }

    /// Direct sums of up to three pieces, sometimes cut down to a
    /// subquotient, then relabelled. Never more than `max_dim`
    /// indecomposables and never empty.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, max_dim: usize) -> Result<MatrixRep> {
        let fitting: Vec<&MatrixRep> = self
            .pieces
            .iter()
            .filter(|p| p.dimension() >= 1 && p.dimension() <= max_dim)
            .collect();
        let mut rep = (*fitting
            .choose(rng)
            .ok_or_else(|| Error::precondition("no representation fits the size limit"))?)
        .clone();
        for _ in 0..rng.random_range(0..3) {
            let p = fitting.choose(rng).expect("non-empty");
            if rep.dimension() + p.dimension() <= max_dim {
                rep = direct_sum(&rep, p)?;
            }
        }
        if rng.random_bool(0.3) {
            let cs = coideals(&rep);
            let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = cs
                .iter()
                .flat_map(|q| cs.iter().map(move |r| (q, r)))
                .filter(|(q, r)| r.len() > q.len() && q.iter().all(|x| r.contains(x)))
                .collect();
            let (q, r) = pairs.choose(rng).expect("∅ ⊂ all");
            rep = subquotient(&rep, q, r)?;
        }
        let perms: Vec<Vec<usize>> = rep
            .ind_lists()
            .iter()
            .map(|l| {
                let mut p: Vec<usize> = (0..l.len()).collect();
                p.shuffle(rng);
                p
            })
            .collect();
        rep.relabel(&perms)
    }
}

fn one_object(
    cat: &Arc<BasedCategory>,
    labels: Vec<String>,
    matrices: Vec<IntMatrix>,
) -> Result<MatrixRep> {
    MatrixRep::new(cat.clone(), vec![labels], matrices)
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

/// All non-negative `A` with `A² = mA` of size at most 3 (entries at most
/// `m + 1` for size ≤ 2, at most 2 for size 3), as representations of
/// `{1, F}`.
pub fn quasi_idempotent_reps(cat: &Arc<BasedCategory>, m: i64) -> Result<Vec<MatrixRep>> {
    let f = cat.lookup("F")?;
    let mut out = Vec::new();
    for (size, bound) in [(1, m + 1), (2, m + 1), (3, 2)] {
        let c =
            MatrixConstraintSet::new(size, vec![0, -m, 1], Positivity::Nonnegative, bound.max(1))
                .normalized(Normalization::Raw);
        for a in enumerate_matrix_solutions(&c, DEFAULT_BUDGET)? {
            let mut ms = vec![IntMatrix::identity(size); cat.len()];
            ms[f.0] = a;
            out.push(one_object(cat, numbered("X", size), ms)?);
        }
    }
    Ok(out)
}

/// Objects `a`, `b` and a single non-identity `F: a → b`.
pub fn arrow_category() -> BasedCategory {
    CategoryBuilder::new()
        .object("a", "1a")
        .object("b", "1b")
        .morphism("F", "a", "b")
        .build()
        .expect("well-formed")
        .with_metadata("family", "arrow")
}

/// Any matrix is a representation of the arrow category.
pub fn random_arrow_rep<R: Rng + ?Sized>(
    cat: &Arc<BasedCategory>,
    rng: &mut R,
    max_dim: usize,
) -> Result<MatrixRep> {
    let p = rng.random_range(0..=max_dim.saturating_sub(1));
    let q = rng.random_range(0..=max_dim - p).max(usize::from(p == 0));
    let mut f = IntMatrix::zeros(q, p);
    for r in 0..q {
        for c in 0..p {
            f.set(r, c, rng.random_range(0..=2));
        }
    }
    let f_id = cat.lookup("F")?;
    let matrices = cat
        .morphism_ids()
        .map(|id| match cat.morphism(id) {
            _ if id == f_id => f.clone(),
            m if m.dom.0 == 0 => IntMatrix::identity(p),
            _ => IntMatrix::identity(q),
        })
        .collect();
    MatrixRep::new(
        cat.clone(),
        vec![numbered("X", p), numbered("Y", q)],
        matrices,
    )
}

/// Two equivalent objects: `F: a → b`, `G: b → a`, mutually inverse and
/// swapped by the involution.
pub fn morita_pair_category() -> BasedCategory {
    CategoryBuilder::new()
        .object("a", "1a")
        .object("b", "1b")
        .morphism("F", "a", "b")
        .morphism("G", "b", "a")
        .product("G", "F", &[("1a", 1)])
        .product("F", "G", &[("1b", 1)])
        .star("F", "G")
        .star("G", "F")
        .build()
        .expect("well-formed")
        .with_metadata("family", "morita-pair")
}

/// `F ↦ P`, `G ↦ Pᵗ` for a random permutation matrix `P`.
pub fn random_morita_rep<R: Rng + ?Sized>(
    cat: &Arc<BasedCategory>,
    rng: &mut R,
    n: usize,
) -> Result<MatrixRep> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut p = IntMatrix::zeros(n, n);
    for (c, &r) in perm.iter().enumerate() {
        p.set(r, c, 1);
    }
    let (f, g) = (cat.lookup("F")?, cat.lookup("G")?);
    let matrices = cat
        .morphism_ids()
        .map(|id| {
            if id == f {
                p.clone()
            } else if id == g {
                p.transpose()
            } else {
                IntMatrix::identity(n)
            }
        })
        .collect();
    MatrixRep::new(
        cat.clone(),
        vec![numbered("X", n), numbered("Y", n)],
        matrices,
    )
}

/// A monoid of maps on `{0, …, points − 1}` generated by `gens`, together
/// with its action on the points. Elements are written in one-line notation.
pub fn transformation_monoid(
    points: usize,
    gens: &[Vec<usize>],
) -> Result<(MultTable, Vec<Vec<usize>>)> {
    if gens
        .iter()
        .any(|g| g.len() != points || g.iter().any(|&x| x >= points))
    {
        return Err(Error::invalid("generators must be maps on the point set"));
    }
    let mut elems: Vec<Vec<usize>> = vec![(0..points).collect()];
    let mut k = 0;
    while k < elems.len() {
        for g in gens {
            // (g ∘ a)(x) = g(a(x))
            let ga: Vec<usize> = elems[k].iter().map(|&x| g[x]).collect();
            if !elems.contains(&ga) {
                elems.push(ga);
            }
        }
        k += 1;
    }
    let labels: Vec<String> = elems
        .iter()
        .map(|e| e.iter().map(|&x| char::from(b'0' + x as u8)).collect())
        .collect();
    let table = elems
        .iter()
        .map(|a| {
            elems
                .iter()
                .map(|b| {
                    let ab: Vec<usize> = b.iter().map(|&x| a[x]).collect();
                    elems.iter().position(|e| *e == ab).expect("closed")
                })
                .collect()
        })
        .collect();
    Ok((MultTable::new(labels, table)?, elems))
}

/// Permutation-like action matrices: column `x` of `[F_a]` is the unit
/// vector at `a(x)`.
pub fn point_action_rep(cat: &Arc<BasedCategory>, elems: &[Vec<usize>]) -> Result<MatrixRep> {
    let points = elems.first().map_or(0, Vec::len);
    let matrices = elems
        .iter()
        .map(|a| {
            let mut m = IntMatrix::zeros(points, points);
            for (x, &y) in a.iter().enumerate() {
                m.set(y, x, 1);
            }
            m
        })
        .collect();
    one_object(
        cat,
        (0..points).map(|x| format!("p{x}")).collect(),
        matrices,
    )
}

/// Tensor product of two one-object categories: 1-morphisms `F⊗G`, with
/// structure constants multiplied.
pub fn tensor_category(a: &BasedCategory, b: &BasedCategory) -> Result<BasedCategory> {
    if a.objects().len() != 1 || b.objects().len() != 1 {
        return Err(Error::precondition(
            "tensor products are built for one-object categories",
        ));
    }
    let nb = b.len();
    let pair = |f: MorphismId, g: MorphismId| MorphismId(f.0 * nb + g.0);
    let mut morphisms = Vec::new();
    for f in a.morphism_ids() {
        for g in b.morphism_ids() {
            morphisms.push(OneMorphism {
                name: format!("{}⊗{}", a.name(f), b.name(g)),
                dom: ObjectId(0),
                cod: ObjectId(0),
                is_identity: a.morphism(f).is_identity && b.morphism(g).is_identity,
            });
        }
    }
    let mut composition = BTreeMap::new();
    for f1 in a.morphism_ids() {
        for g1 in b.morphism_ids() {
            for f2 in a.morphism_ids() {
                for g2 in b.morphism_ids() {
                    let (x, y) = (a.compose(f1, f2)?, b.compose(g1, g2)?);
                    let mut ms = Multiset::new();
                    for (h, k) in x.iter() {
                        for (h2, k2) in y.iter() {
                            ms.add(pair(h, h2), k * k2);
                        }
                    }
                    composition.insert((pair(f1, g1), pair(f2, g2)), ms);
                }
            }
        }
    }
    let involution = match (a.involution(), b.involution()) {
        (Some(_), Some(_)) => Some(
            a.morphism_ids()
                .flat_map(|f| b.morphism_ids().map(move |g| (f, g)))
                .map(|(f, g)| pair(a.star(f).expect("present"), b.star(g).expect("present")))
                .collect(),
        ),
        _ => None,
    };
    Ok(
        BasedCategory::new(vec![CLUB.to_string()], morphisms, composition, involution)?
            .with_metadata("family", "tensor"),
    )
}

fn kronecker(x: &IntMatrix, y: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zeros(x.rows() * y.rows(), x.cols() * y.cols());
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            for k in 0..y.rows() {
                for l in 0..y.cols() {
                    out.set(
                        i * y.rows() + k,
                        j * y.cols() + l,
                        x.get(i, j) * y.get(k, l),
                    );
                }
            }
        }
    }
    out
}

/// The Kronecker product of representations of the two factors.
pub fn tensor_rep(cat: &Arc<BasedCategory>, ra: &MatrixRep, rb: &MatrixRep) -> Result<MatrixRep> {
    let labels = ra.ind_lists()[0]
        .iter()
        .flat_map(|x| rb.ind_lists()[0].iter().map(move |y| format!("{x}⊗{y}")))
        .collect();
    let matrices = ra
        .matrices()
        .iter()
        .flat_map(|x| rb.matrices().iter().map(move |y| kronecker(x, y)))
        .collect();
    one_object(cat, labels, matrices)
}

/// Fixed list of named categories covering every builder, used where a
/// property is checked on all test categories.
pub fn catalogue() -> Result<Vec<(String, Arc<BasedCategory>)>> {
    let mut out: Vec<(String, BasedCategory)> = Vec::new();
    for m in 0..=3 {
        out.push((
            format!("quasi-idempotent m={m}"),
            quasi_idempotent_category(m),
        ));
    }
    for g in ["C2", "C3", "V4", "S3", "D4"] {
        out.push((
            format!("group {g}"),
            build_group_category(&MultTable::named(g)?)?,
        ));
    }
    for n in 2..=4 {
        out.push((
            format!("dihedral Soergel n={n}"),
            build_dihedral_soergel(n)?,
        ));
    }
    let cartans: [(&[&[i64]], &[usize]); 5] = [
        (&[&[2]], &[0]),
        (&[&[3]], &[0]),
        (&[&[1, 1], &[1, 1]], &[1, 0]),
        (&[&[2, 1], &[1, 2]], &[0, 1]),
        (&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]], &[2, 0, 1]),
    ];
    for (rows, sigma) in cartans {
        let c = IntMatrix::from_rows(rows)?;
        out.push((
            format!("cartan {c}"),
            build_cartan_category(&c, Some(sigma))?,
        ));
    }
    out.push(("arrow".into(), arrow_category()));
    out.push(("morita pair".into(), morita_pair_category()));
    out.push((
        "tensor m=1 ⊗ m=2".into(),
        tensor_category(&quasi_idempotent_category(1), &quasi_idempotent_category(2))?,
    ));
    let (t, _) = transformation_monoid(2, &[vec![0, 0], vec![1, 0]])?;
    out.push(("maps on two points".into(), build_monoid_category(&t)?));
    let (t, _) = transformation_monoid(3, &[vec![1, 2, 2]])?;
    out.push(("shift on three points".into(), build_monoid_category(&t)?));
    Ok(out.into_iter().map(|(n, c)| (n, Arc::new(c))).collect())
}

/// A random category from the small families, with family-specific extra
/// representations.
pub fn random_source<R: Rng + ?Sized>(rng: &mut R) -> Result<RepSource> {
    match rng.random_range(0..8) {
        0 => {
            let m = rng.random_range(0..=3);
            let cat = Arc::new(quasi_idempotent_category(m));
            let extra = quasi_idempotent_reps(&cat, m as i64)?;
            RepSource::new(cat, extra)
        }
        1 => {
            let name = *["C2", "C3", "C4", "V4"].choose(rng).expect("non-empty");
            let table = MultTable::named(name)?;
            let reps = classify_group_reps(&table)?;
            let cat = reps[0].rep.category_arc().clone();
            RepSource::new(cat, reps.into_iter().map(|g| g.rep).collect())
        }
        2 => {
            let cat = Arc::new(arrow_category());
            let extra = (0..6)
                .map(|_| random_arrow_rep(&cat, rng, 4))
                .collect::<Result<_>>()?;
            RepSource::new(cat, extra)
        }
        3 => {
            let cat = Arc::new(morita_pair_category());
            let extra = (1..=2)
                .map(|n| random_morita_rep(&cat, rng, n))
                .collect::<Result<_>>()?;
            RepSource::new(cat, extra)
        }
        4 => RepSource::new(Arc::new(build_dihedral_soergel(2)?), Vec::new()),
        5 => {
            let (m1, m2) = (rng.random_range(0..=2), rng.random_range(0..=2));
            let (a, b) = (
                Arc::new(quasi_idempotent_category(m1)),
                Arc::new(quasi_idempotent_category(m2)),
            );
            let cat = Arc::new(tensor_category(&a, &b)?);
            let (ra, rb) = (
                quasi_idempotent_reps(&a, m1 as i64)?,
                quasi_idempotent_reps(&b, m2 as i64)?,
            );
            let mut extra = Vec::new();
            for _ in 0..6 {
                let x = ra.iter().filter(|r| r.dimension() <= 2).collect::<Vec<_>>();
                let y = rb.iter().filter(|r| r.dimension() <= 2).collect::<Vec<_>>();
                let (x, y) = (
                    x.choose(rng).expect("non-empty"),
                    y.choose(rng).expect("non-empty"),
                );
                extra.push(tensor_rep(&cat, x, y)?);
            }
            RepSource::new(cat, extra)
        }
        6 => loop {
            let points = rng.random_range(2..=3);
            let gens: Vec<Vec<usize>> = (0..rng.random_range(1..=2))
                .map(|_| (0..points).map(|_| rng.random_range(0..points)).collect())
                .collect();
            let (table, elems) = transformation_monoid(points, &gens)?;
            if table.order() <= 4 {
                let cat = Arc::new(build_monoid_category(&table)?);
                let extra = vec![point_action_rep(&cat, &elems)?];
                break RepSource::new(cat, extra);
            }
        },
        _ => {
            let c = rng.random_range(1..=3);
            let cat = Arc::new(build_cartan_category(&IntMatrix::scalar(c), Some(&[0]))?);
            RepSource::new(cat, Vec::new())
        }
    }
}

/// A connected Cartan matrix of size at most `n_max` with entries at most
/// `entry_max` and a permutation `σ` with `C[j][s] = C[σ(s)][j]`. Entries
/// are assigned per orbit of `(j, s) ↦ (σ(s), j)`.
pub fn random_cartan_input<R: Rng + ?Sized>(
    rng: &mut R,
    n_max: usize,
    entry_max: i64,
) -> (IntMatrix, Vec<usize>) {
    loop {
        let n = rng.random_range(1..=n_max);
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(rng);
        let mut c = IntMatrix::zeros(n, n);
        let mut assigned = vec![vec![false; n]; n];
        for j0 in 0..n {
            for s0 in 0..n {
                if assigned[j0][s0] {
                    continue;
                }
                let mut orbit = Vec::new();
                let (mut j, mut s) = (j0, s0);
                while !assigned[j][s] {
                    assigned[j][s] = true;
                    orbit.push((j, s));
                    (j, s) = (sigma[s], j);
                }
                let low = i64::from(orbit.iter().any(|&(j, s)| j == s));
                let v = rng.random_range(low..=entry_max);
                for (j, s) in orbit {
                    c.set(j, s, v);
                }
            }
        }
        if build_cartan_category(&c, Some(&sigma)).is_ok() {
            return (c, sigma);
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn primitive_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, max_entry: i64) -> Vec<i64> {
    let v: Vec<i64> = (0..n).map(|_| rng.random_range(1..=max_entry)).collect();
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    v.into_iter().map(|x| x / g).collect()
}

/// `A = v·wᵗ` for primitive positive integer vectors, so `A² = mA` with
/// `m = w·v`. Returns `(A, m)`.
pub fn random_pf_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    max_size: usize,
    max_entry: i64,
) -> (IntMatrix, i64) {
    let n = rng.random_range(1..=max_size);
    let (v, w) = (
        primitive_vector(rng, n, max_entry),
        primitive_vector(rng, n, max_entry),
    );
    let mut a = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a.set(i, j, v[i] * w[j]);
        }
    }
    (a, v.iter().zip(&w).map(|(x, y)| x * y).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrep::validate_rep;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_categories_and_reps_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let src = random_source(&mut rng).unwrap();
            assert!(src.category.validate().is_valid(), "{:?}", src.category);
            assert!(src.category.len() <= 4);
            for p in &src.pieces {
                assert!(validate_rep(p).is_valid(), "{p:?}");
            }
            for _ in 0..5 {
                let r = src.sample(&mut rng, 5).unwrap();
                assert!(r.dimension() >= 1 && r.dimension() <= 5);
                assert!(validate_rep(&r).is_valid(), "{r:?}");
            }
        }
    }

    #[test]
    fn catalogue_is_valid() {
        for (name, cat) in catalogue().unwrap() {
            assert!(cat.validate().is_valid(), "{name}");
        }
    }

    #[test]
    fn transformation_monoid_closure() {
        // a constant map and a transposition on two points generate all four maps
        let (t, elems) = transformation_monoid(2, &[vec![0, 0], vec![1, 0]]).unwrap();
        assert_eq!(t.order(), 4);
        assert_eq!(t.labels()[0], "01");
        assert!(t.check_monoid().is_ok());
        let cat = Arc::new(build_monoid_category(&t).unwrap());
        assert!(validate_rep(&point_action_rep(&cat, &elems).unwrap()).is_valid());
    }

    #[test]
    fn tensor_of_quasi_idempotents() {
        let (a, b) = (quasi_idempotent_category(2), quasi_idempotent_category(3));
        let t = tensor_category(&a, &b).unwrap();
        assert!(t.validate().is_valid());
        let ff = t.lookup("F⊗F").unwrap();
        assert_eq!(t.compose(ff, ff).unwrap(), Multiset::from_pairs([(ff, 6)]));
    }

    #[test]
    fn cartan_inputs_are_accepted() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let (c, sigma) = random_cartan_input(&mut rng, 3, 3);
            for j in 0..c.rows() {
                assert!(c.get(j, j) >= 1);
                for s in 0..c.rows() {
                    assert_eq!(c.get(j, s), c.get(sigma[s], j));
                }
            }
        }
    }

    #[test]
    fn pf_matrices_are_quasi_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let (a, m) = random_pf_matrix(&mut rng, 4, 5);
            assert_eq!(a.checked_mul(&a).unwrap(), a.checked_scale(m).unwrap());
            assert_eq!(a.rank(), 1);
        }
    }
}
