//! Constructions of the example families: group and monoid categories,
//! projective-functor categories from a Cartan matrix, dihedral Soergel data.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::kl::{build_kl_category, KLBasisElement, KLRingData, ProductOrder};
use super::{BasedCategory, MorphismId, Multiset, ObjectId, OneMorphism};
use crate::error::{Error, Result};
use crate::group::{word_length, MultTable};
use crate::matrix::IntMatrix;

/// Label of the single object of one-object categories.
pub const CLUB: &str = "♣";

fn one_object_morphisms(names: &[String], identity: usize) -> Vec<OneMorphism> {
    names
        .iter()
        .enumerate()
        .map(|(i, name)| OneMorphism {
            name: name.clone(),
            dom: ObjectId(0),
            cod: ObjectId(0),
            is_identity: i == identity,
        })
        .collect()
}

fn table_composition(table: &MultTable) -> BTreeMap<(MorphismId, MorphismId), Multiset> {
    let n = table.order();
    let mut composition = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            composition.insert(
                (MorphismId(a), MorphismId(b)),
                Multiset::singleton(MorphismId(table.mul(a, b))),
            );
        }
    }
    composition
}

/// The group 2-category: one object, one 1-morphism `F_g` per element with
/// `F_g ∘ F_h = F_{gh}`, and `F_g* = F_{g⁻¹}`. 1-morphisms carry the element
/// labels.
pub fn build_group_category(table: &MultTable) -> Result<BasedCategory> {
    let e = table.check_group()?;
    let involution = table.inverses().into_iter().map(MorphismId).collect();
    Ok(BasedCategory::new(
        vec![CLUB.to_string()],
        one_object_morphisms(table.labels(), e),
        table_composition(table),
        Some(involution),
    )?
    .with_metadata("family", "group")
    .with_metadata("order", table.order() as i64))
}

/// The analogous category for a finite monoid. There is no involution in
/// general.
pub fn build_monoid_category(table: &MultTable) -> Result<BasedCategory> {
    let e = table.check_monoid()?;
    Ok(BasedCategory::new(
        vec![CLUB.to_string()],
        one_object_morphisms(table.labels(), e),
        table_composition(table),
        None,
    )?
    .with_metadata("family", "monoid")
    .with_metadata("order", table.order() as i64))
}

/// Name of the projective functor `F_{ij}` (0-based indices, printed 1-based).
pub fn cartan_name(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("F{}{}", i + 1, j + 1)
    } else {
        format!("F{}_{}", i + 1, j + 1)
    }
}

fn is_connected(cartan: &IntMatrix) -> bool {
    let n = cartan.rows();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && (cartan.get(i, j) > 0 || cartan.get(j, i) > 0) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Category of projective functors for a connected algebra with Cartan
/// matrix `C` (`C[i][j] = dim e_i A e_j`): 1-morphisms `1` and `F_{ij}`, with
/// `F_{ij} ∘ F_{st} = F_{it}^{⊕ C[j][s]}`.
///
/// `nakayama`, when given, is a 0-based permutation `σ` and installs the
/// involution `F_{ij}* = F_{σ⁻¹(j) i}`. It must satisfy
/// `C[j][s] = C[σ(s)][j]`, which is what makes `*` reverse compositions.
/// The total dimension `m = Σ C[i][j]` is stored as metadata `m`.
pub fn build_cartan_category(
    cartan: &IntMatrix,
    nakayama: Option<&[usize]>,
) -> Result<BasedCategory> {
    let n = cartan.rows();
    if n == 0 || !cartan.is_square() {
        return Err(Error::invalid("Cartan matrix must be square and non-empty"));
    }
    if !cartan.is_nonnegative() {
        return Err(Error::invalid("Cartan matrix entries must be non-negative"));
    }
    if let Some(i) = (0..n).find(|&i| cartan.get(i, i) < 1) {
        return Err(Error::invalid(format!(
            "diagonal entry C[{0}][{0}] must be at least 1",
            i + 1
        )));
    }
    if !is_connected(cartan) {
        return Err(Error::invalid(
            "Cartan matrix decomposes into blocks; the algebra is not connected",
        ));
    }
    if let Some(sigma) = nakayama {
        let mut seen = vec![false; n];
        if sigma.len() != n
            || sigma
                .iter()
                .any(|&x| x >= n || core::mem::replace(&mut seen[x], true))
        {
            return Err(Error::invalid("sigma is not a permutation of the indices"));
        }
        for j in 0..n {
            for s in 0..n {
                if cartan.get(j, s) != cartan.get(sigma[s], j) {
                    return Err(Error::invalid(format!(
                        "sigma is not a Nakayama permutation for C: C[{}][{}] ≠ C[σ({})][{}]",
                        j + 1,
                        s + 1,
                        s + 1,
                        j + 1
                    )));
                }
            }
        }
    }

    // identity first, then F_{ij} row by row
    let f = |i: usize, j: usize| MorphismId(1 + i * n + j);
    let mut morphisms = vec![OneMorphism {
        name: "1".to_string(),
        dom: ObjectId(0),
        cod: ObjectId(0),
        is_identity: true,
    }];
    for i in 0..n {
        for j in 0..n {
            morphisms.push(OneMorphism {
                name: cartan_name(n, i, j),
                dom: ObjectId(0),
                cod: ObjectId(0),
                is_identity: false,
            });
        }
    }
    let mut composition = BTreeMap::new();
    super::fill_identity_products(&morphisms, &mut composition);
    for i in 0..n {
        for j in 0..n {
            for s in 0..n {
                for t in 0..n {
                    let k = cartan.get(j, s) as u64;
                    composition.insert((f(i, j), f(s, t)), Multiset::from_pairs([(f(i, t), k)]));
                }
            }
        }
    }
    let involution = nakayama.map(|sigma| {
        let mut inverse = vec![0; n];
        for (a, &b) in sigma.iter().enumerate() {
            inverse[b] = a;
        }
        let mut inv = vec![MorphismId(0)];
        for i in 0..n {
            for j in 0..n {
                inv.push(f(inverse[j], i));
            }
        }
        inv
    });
    let m: i64 = cartan.entries().iter().sum();
    Ok(
        BasedCategory::new(vec![CLUB.to_string()], morphisms, composition, involution)?
            .with_metadata("family", "cartan")
            .with_metadata("n", n as i64)
            .with_metadata("m", m)
            .with_metadata("cartan", format!("{cartan}")),
    )
}

/// Expansions printed for type B2, in element order.
const B2_EXPANSIONS: [(&str, &[&str]); 8] = [
    ("e", &["e"]),
    ("s", &["e", "s"]),
    ("t", &["e", "t"]),
    ("st", &["e", "t", "s", "st"]),
    ("ts", &["e", "t", "s", "ts"]),
    ("sts", &["e", "t", "s", "ts", "st", "sts"]),
    ("tst", &["e", "t", "s", "ts", "st", "tst"]),
    ("stst", &["e", "t", "s", "ts", "st", "tst", "sts", "stst"]),
];

/// Kazhdan–Lusztig data of the dihedral group of order `2n`:
/// `θ_w = Σ_{v ≤ w} v`, where `v < w` in Bruhat order iff `ℓ(v) < ℓ(w)`.
pub fn dihedral_kl_data(n: usize) -> Result<KLRingData> {
    if n < 2 {
        return Err(Error::invalid("dihedral Soergel data needs n ≥ 2"));
    }
    let table = MultTable::dihedral(n);
    let order: Vec<usize> = (0..table.order()).collect();
    let basis = (0..table.order())
        .map(|w| {
            let lw = word_length(table.label(w));
            let expansion = (0..table.order())
                .map(|v| i64::from(v == w || word_length(table.label(v)) < lw))
                .collect();
            KLBasisElement {
                label: table.label(w).to_string(),
                leading: w,
                expansion,
            }
        })
        .collect();
    KLRingData::new(table, order, basis, ProductOrder::Opposite)
}

/// Soergel-bimodule category of the dihedral group of order `2n`, one
/// 1-morphism `θ_w` per element, named by the reduced word of `w`.
///
/// Composition is the opposite ring product, `θ_x ∘ θ_y ↔ θ_y θ_x`: with this
/// orientation the left cells of `θ_s` consist of words starting with `s`.
/// For `n = 4` the expansions are compared against the B2 table and the
/// build fails on any difference.
pub fn build_dihedral_soergel(n: usize) -> Result<BasedCategory> {
    let data = dihedral_kl_data(n)?;
    if n == 4 {
        let table = data.elements();
        for (label, expected) in B2_EXPANSIONS {
            let basis = data
                .basis()
                .iter()
                .find(|b| b.label == label)
                .ok_or_else(|| Error::invalid(format!("missing basis element θ_{label}")))?;
            let mut want = vec![0i64; table.order()];
            for v in expected {
                want[table.index_of(v).expect("B2 element")] = 1;
            }
            if basis.expansion != want {
                return Err(Error::invalid(format!(
                    "θ_{label} expansion does not match the B2 table"
                )));
            }
        }
    }
    Ok(build_kl_category(&data)?
        .with_metadata("family", "dihedral-soergel")
        .with_metadata("n", n as i64)
        .with_metadata("product-order", "opposite"))
}
