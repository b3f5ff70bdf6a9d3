//! Which simple modules of the type B2 Weyl group admit a categorification
//! through the Soergel-bimodule category: the computation behind the answer
//! "only the trivial and the sign module".

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{
    enumerate_matrix_solutions, ClassificationReport, MatrixConstraintSet, Normalization,
    Positivity, DEFAULT_BUDGET,
};
use crate::based_cat::{
    build_dihedral_soergel, dihedral_kl_data, BasedCategory, MetaValue, Multiset,
};
use crate::cells::{
    all_cell_reps, annihilator_consistency, is_strongly_regular, numerical_condition, preorder,
    CellSide,
};
use crate::error::{Error, Result};
use crate::matrep::{
    homomorphism_failures, is_transitive, reps_equivalent, validate_rep, MatrixRep,
};
use crate::matrix::IntMatrix;

/// The nine candidates for `⟦θ_st + θ_ts⟧`, as listed in the source.
pub const LISTED_X_CANDIDATES: [[[i64; 2]; 2]; 9] = [
    [[4, 4], [1, 0]],
    [[4, 2], [2, 0]],
    [[4, 1], [4, 0]],
    [[3, 7], [1, 1]],
    [[3, 1], [7, 1]],
    [[2, 8], [1, 2]],
    [[2, 4], [2, 2]],
    [[2, 2], [4, 2]],
    [[2, 1], [8, 2]],
];

const J2: [&str; 6] = ["s", "t", "st", "ts", "sts", "tst"];
const TOP: &str = "stst";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: u8,
    pub title: String,
    pub details: Vec<String>,
}

/// Matrices for `θ_s`, `θ_t` and the resulting `⟦θ_st + θ_ts⟧`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCandidate {
    pub theta_s: IntMatrix,
    pub theta_t: IntMatrix,
    pub x: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    /// `s` or `t`: the generator whose matrix is positive.
    pub generator: String,
    pub matrix: IntMatrix,
    pub subcategory: Vec<String>,
    pub transitive: bool,
    /// Matrices of the generator in the cell representations of the
    /// subcategory.
    pub cell_rep_matrices: Vec<IntMatrix>,
    pub conjugate_to_cell_rep: bool,
    pub strongly_regular: bool,
    pub numerical_condition: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneDimensional {
    pub epsilon: i64,
    pub delta: i64,
    /// `θ_w ↦ Σ_{v ≤ w} χ(v)` in category order.
    pub values: Vec<(String, i64)>,
    pub consistent: bool,
    pub witness: Option<(String, String)>,
}

/// Every intermediate result of [`b2_obstruction_pipeline`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct B2Certificate {
    pub stages: Vec<StageRecord>,
    pub two_sided_cells: Vec<Vec<String>>,
    /// `(θ_st + θ_ts)² = a·Θ`.
    pub y_square: i64,
    /// `Θ² = b·Θ + c·(θ_st + θ_ts)`.
    pub theta_square: (i64, i64),
    /// Coefficients of the polynomial annihilating `X`, constant first.
    pub polynomial: Vec<i64>,
    pub trace: i64,
    pub determinant: i64,
    pub x_bound: i64,
    pub x_raw: Vec<IntMatrix>,
    pub x_classes: Vec<IntMatrix>,
    pub x_listed: Vec<IntMatrix>,
    pub generator_polynomial: Vec<i64>,
    pub generator_bound: i64,
    pub generator_raw_count: usize,
    pub generator_classes: Vec<IntMatrix>,
    pub pairs: Vec<PairCandidate>,
    pub obstructions: Vec<Obstruction>,
    pub one_dimensional: Vec<OneDimensional>,
    pub conclusion: String,
}

fn names_of(cat: &BasedCategory, ms: &Multiset) -> String {
    cat.format_sum(ms)
}

fn sum_of(cat: &BasedCategory, names: &[&str]) -> Result<Multiset> {
    names.iter().map(|n| Ok((cat.lookup(n)?, 1))).collect()
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn m2(rows: [[i64; 2]; 2]) -> IntMatrix {
    IntMatrix::from_rows(&rows).expect("2×2")
}

/// Canonical representative of a pair of matrices under simultaneous
/// conjugation by the same permutation.
fn canonical_pair(a: &IntMatrix, b: &IntMatrix) -> (IntMatrix, IntMatrix) {
    crate::matrix::permutations(a.rows())
        .iter()
        .map(|p| (a.conjugate_by(p), b.conjugate_by(p)))
        .max()
        .expect("non-empty")
}

/// Runs the seven stages. Each stage compares its result with the expected
/// form and aborts with [`Error::Stage`] on any difference.
pub fn b2_obstruction_pipeline() -> Result<B2Certificate> {
    let mut stages = Vec::new();

    // 1. the category and its cells
    let cat = Arc::new(build_dihedral_soergel(4).map_err(|e| Error::stage(1, format!("{e}")))?);
    let j = preorder(&cat, CellSide::TwoSided)?;
    let two_sided_cells: Vec<Vec<String>> = j
        .cells()
        .iter()
        .map(|c| c.iter().map(|&f| cat.name(f).to_string()).collect())
        .collect();
    let want: Vec<Vec<String>> = [vec!["e"], J2.to_vec(), vec![TOP]]
        .iter()
        .map(|c| c.iter().map(|s| s.to_string()).collect())
        .collect();
    if two_sided_cells != want {
        return Err(Error::stage(
            1,
            format!("unexpected two-sided cells {two_sided_cells:?}"),
        ));
    }
    stages.push(StageRecord {
        stage: 1,
        title: "Soergel category of the dihedral group of order 8".into(),
        details: vec![
            format!("{} indecomposable 1-morphisms", cat.len()),
            format!("two-sided cells {two_sided_cells:?}"),
        ],
    });

    // 2. identities in the quotient by the top cell
    let top = cat.lookup(TOP)?;
    let truncate = |mut ms: Multiset| {
        ms.remove(top);
        ms
    };
    let y = sum_of(&cat, &["st", "ts"])?;
    let theta = sum_of(&cat, &J2)?;
    let y2 = truncate(cat.compose_sums(&y, &y)?);
    let a = y2.get(cat.lookup("s")?);
    if a == 0 || y2 != theta.scaled(a) {
        return Err(Error::stage(
            2,
            format!(
                "(θ_st+θ_ts)² ≡ {} is not a multiple of Θ",
                names_of(&cat, &y2)
            ),
        ));
    }
    let t2 = truncate(cat.compose_sums(&theta, &theta)?);
    let b = t2.get(cat.lookup("s")?);
    let c = t2.get(cat.lookup("st")?).checked_sub(b).unwrap_or(u64::MAX);
    let mut expected = theta.scaled(b);
    expected.add_all(&y, c);
    if c == u64::MAX || t2 != expected {
        return Err(Error::stage(
            2,
            format!(
                "Θ² ≡ {} is not of the form bΘ + c(θ_st+θ_ts)",
                names_of(&cat, &t2)
            ),
        ));
    }
    let (a, b, c) = (a as i64, b as i64, c as i64);
    if (a, b, c) != (2, 10, 4) {
        return Err(Error::stage(
            2,
            format!("coefficients ({a}; {b}, {c}) differ from (2; 10, 4)"),
        ));
    }
    stages.push(StageRecord {
        stage: 2,
        title: "identities modulo the top cell".into(),
        details: vec![
            format!("(θ_st+θ_ts)² ≡ {a}Θ"),
            format!("Θ² ≡ {b}Θ + {c}(θ_st+θ_ts)"),
        ],
    });

    // 3. the polynomial for X = ⟦θ_st + θ_ts⟧ and its solutions
    // X² = aΘ', Θ'² = bΘ' + cX  ⇒  X⁴ = ab X² + a²c X
    let polynomial = vec![0, -(a * a * c), -(a * b), 0, 1];
    if polynomial != [0, -16, -20, 0, 1] {
        return Err(Error::stage(
            3,
            format!("derived polynomial {polynomial:?}"),
        ));
    }
    // X⁴ − 20X² − 16X = X (X + 4) (X² − 4X − 4)
    let quadratic = [-4, -4, 1];
    if poly_mul(&poly_mul(&[0, 1], &[4, 1]), &quadratic) != polynomial {
        return Err(Error::stage(3, "factorization check failed"));
    }
    // nonzero, non-negative trace: the eigenvalues are the roots of the quadratic factor
    let trace = -quadratic[1];
    let determinant = quadratic[0];
    // diagonal entries lie in 0..=trace, so off-diagonal products are at most
    // max(d₁d₂) − det
    let x_bound = (0..=trace).map(|d| d * (trace - d)).max().unwrap_or(0) - determinant;
    let constraints =
        MatrixConstraintSet::new(2, polynomial.clone(), Positivity::Nonnegative, x_bound)
            .with_trace(trace)
            .with_determinant(determinant)
            .nonzero();
    let x_raw = enumerate_matrix_solutions(
        &constraints.clone().normalized(Normalization::Raw),
        DEFAULT_BUDGET,
    )?;
    let x_classes = enumerate_matrix_solutions(
        &constraints.clone().normalized(Normalization::ConjugacyMax),
        DEFAULT_BUDGET,
    )?;
    let x_listed = enumerate_matrix_solutions(
        &constraints.normalized(Normalization::DiagonalSorted),
        DEFAULT_BUDGET,
    )?;
    let expected: Vec<IntMatrix> = LISTED_X_CANDIDATES.iter().map(|&r| m2(r)).collect();
    if x_listed != expected {
        return Err(Error::stage(
            3,
            format!("solutions {x_listed:?} differ from the nine listed"),
        ));
    }
    stages.push(StageRecord {
        stage: 3,
        title: "X⁴ − 20X² − 16X = 0 with trace 4 and determinant −4".into(),
        details: vec![
            format!("entry bound {x_bound}"),
            format!(
                "{} solutions, {} permutation classes",
                x_raw.len(),
                x_classes.len()
            ),
            format!("{} with non-increasing diagonal", x_listed.len()),
        ],
    });

    // 4. candidates for ⟦θ_s⟧, ⟦θ_t⟧
    let (s, t) = (cat.lookup("s")?, cat.lookup("t")?);
    let mut generator_polynomial = None;
    for g in [s, t] {
        let sq = cat.compose(g, g)?;
        if sq.support().collect::<Vec<_>>() != [g] {
            return Err(Error::stage(
                4,
                format!("θ_{}² is not a multiple of θ_{}", cat.name(g), cat.name(g)),
            ));
        }
        let k = sq.get(g) as i64;
        let p = vec![0, -k, 1];
        if generator_polynomial.get_or_insert(p.clone()) != &p {
            return Err(Error::stage(4, "θ_s and θ_t satisfy different polynomials"));
        }
    }
    let generator_polynomial = generator_polynomial.expect("set above");
    let generator_bound = x_raw
        .iter()
        .filter_map(IntMatrix::max_entry)
        .max()
        .unwrap_or(0);
    let gc = MatrixConstraintSet::new(
        2,
        generator_polynomial.clone(),
        Positivity::Nonnegative,
        generator_bound,
    )
    .nonzero();
    let generator_raw =
        enumerate_matrix_solutions(&gc.clone().normalized(Normalization::Raw), DEFAULT_BUDGET)?;
    let generator_classes = enumerate_matrix_solutions(&gc, DEFAULT_BUDGET)?;
    let mut families = BTreeSet::new();
    families.insert(m2([[1, 1], [1, 1]]));
    families.insert(m2([[2, 0], [0, 2]]));
    for a in 0..=generator_bound {
        families.insert(m2([[2, a], [0, 0]]));
        families.insert(m2([[2, 0], [a, 0]]));
    }
    if generator_classes.iter().cloned().collect::<BTreeSet<_>>() != families {
        return Err(Error::stage(4, "candidates differ from the four families"));
    }
    stages.push(StageRecord {
        stage: 4,
        title: "x² − 2x = 0 for ⟦θ_s⟧ and ⟦θ_t⟧".into(),
        details: vec![
            format!("entry bound {generator_bound} (largest entry among the X candidates)"),
            format!(
                "{} solutions, {} permutation classes",
                generator_raw.len(),
                generator_classes.len()
            ),
        ],
    });

    // 5. ⟦θ_st + θ_ts⟧ = ⟦θ_s⟧⟦θ_t⟧ + ⟦θ_t⟧⟦θ_s⟧
    let mut st_ts = cat.compose(s, t)?;
    st_ts.add_all(&cat.compose(t, s)?, 1);
    if st_ts != y {
        return Err(Error::stage(
            5,
            format!("θ_s∘θ_t + θ_t∘θ_s = {}", names_of(&cat, &st_ts)),
        ));
    }
    let x_set: BTreeSet<&IntMatrix> = x_raw.iter().collect();
    // both generators in family form, in one common basis
    let mut found = BTreeSet::new();
    for ms in &generator_classes {
        for mt in &generator_classes {
            let x = ms.checked_mul(mt)?.checked_add(&mt.checked_mul(ms)?)?;
            if x_set.contains(&x) {
                found.insert((ms.clone(), mt.clone()));
            }
        }
    }
    let mut unrestricted = BTreeSet::new();
    for ms in &generator_raw {
        for mt in &generator_raw {
            let x = ms.checked_mul(mt)?.checked_add(&mt.checked_mul(ms)?)?;
            if x_set.contains(&x) {
                unrestricted.insert(canonical_pair(ms, mt));
            }
        }
    }
    let pairs: Vec<PairCandidate> = found
        .into_iter()
        .rev()
        .map(|(ms, mt)| {
            let x = ms.checked_mul(&mt)?.checked_add(&mt.checked_mul(&ms)?)?;
            Ok(PairCandidate {
                theta_s: ms,
                theta_t: mt,
                x,
            })
        })
        .collect::<Result<_>>()?;
    let (ones, e11) = (m2([[1, 1], [1, 1]]), m2([[2, 0], [0, 0]]));
    let expected_pairs = [(ones.clone(), e11.clone()), (e11.clone(), ones.clone())];
    let got: BTreeSet<(IntMatrix, IntMatrix)> = pairs
        .iter()
        .map(|p| (p.theta_s.clone(), p.theta_t.clone()))
        .collect();
    if got != expected_pairs.iter().cloned().collect() {
        return Err(Error::stage(5, format!("surviving pairs {got:?}")));
    }
    stages.push(StageRecord {
        stage: 5,
        title: "⟦θ_s⟧⟦θ_t⟧ + ⟦θ_t⟧⟦θ_s⟧ among the X candidates".into(),
        details: pairs
            .iter()
            .map(|p| format!("⟦θ_s⟧ = {}, ⟦θ_t⟧ = {}, X = {}", p.theta_s, p.theta_t, p.x))
            .chain(core::iter::once(format!(
                "{} pairs up to simultaneous permutation when ⟦θ_t⟧ may leave family form",
                unrestricted.len()
            )))
            .collect(),
    });

    // 6. restriction to the subcategory on θ_e and the positive generator
    let mut obstructions = Vec::new();
    for p in &pairs {
        let (generator, matrix) = if p.theta_s.is_positive() {
            ("s", p.theta_s.clone())
        } else if p.theta_t.is_positive() {
            ("t", p.theta_t.clone())
        } else {
            return Err(Error::stage(6, "no generator acts by a positive matrix"));
        };
        obstructions.push(obstruction(&cat, generator, &matrix)?);
    }
    if let Some(o) = obstructions.iter().find(|o| {
        !o.transitive || o.conjugate_to_cell_rep || !o.strongly_regular || !o.numerical_condition
    }) {
        return Err(Error::stage(
            6,
            format!("no obstruction for θ_{}: {o:?}", o.generator),
        ));
    }
    stages.push(StageRecord {
        stage: 6,
        title: "obstruction certificate".into(),
        details: obstructions
            .iter()
            .map(|o| {
                format!(
                    "subcategory {{{}}}: θ_{} ↦ {} is transitive but matches none of the cell representations {:?}; soundness by the classification of simple transitive 2-representations of fiat categories with strongly regular cells satisfying the numerical condition",
                    o.subcategory.join(", "),
                    o.generator,
                    o.matrix,
                    o.cell_rep_matrices
                        .iter()
                        .map(|m| format!("{m}"))
                        .collect::<Vec<_>>()
                )
            })
            .collect(),
    });

    // 7. one-dimensional modules
    let kl = dihedral_kl_data(4)?;
    let elements = kl.elements();
    let mut one_dimensional = Vec::new();
    for (epsilon, delta) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
        let chi: Vec<i64> = elements
            .labels()
            .iter()
            .map(|w| {
                w.chars()
                    .map(|ch| match ch {
                        's' => epsilon,
                        't' => delta,
                        _ => 1,
                    })
                    .product()
            })
            .collect();
        let mut matrices = Vec::new();
        let mut values = Vec::new();
        for id in cat.morphism_ids() {
            let basis = kl
                .basis()
                .iter()
                .find(|bw| bw.label == cat.name(id))
                .ok_or_else(|| Error::stage(7, "basis label missing"))?;
            let v: i64 = basis.expansion.iter().zip(&chi).map(|(c, x)| c * x).sum();
            values.push((cat.name(id).to_string(), v));
            matrices.push(IntMatrix::scalar(v));
        }
        if !homomorphism_failures(&cat, &matrices).is_empty() {
            return Err(Error::stage(
                7,
                format!("V({epsilon},{delta}) is not a module"),
            ));
        }
        let partial: BTreeMap<_, _> = cat.morphism_ids().zip(matrices).collect();
        let ac = annihilator_consistency(&cat, &partial)?;
        one_dimensional.push(OneDimensional {
            epsilon,
            delta,
            values,
            consistent: ac.verdict,
            witness: ac
                .witness
                .map(|(f, g)| (cat.name(f).to_string(), cat.name(g).to_string())),
        });
    }
    let verdicts: Vec<bool> = one_dimensional.iter().map(|o| o.consistent).collect();
    if verdicts != [true, false, false, true] {
        return Err(Error::stage(
            7,
            format!("unexpected consistency pattern {verdicts:?}"),
        ));
    }
    stages.push(StageRecord {
        stage: 7,
        title: "one-dimensional modules and annihilators".into(),
        details: one_dimensional
            .iter()
            .map(|o| match &o.witness {
                None => format!("V({},{}) consistent", o.epsilon, o.delta),
                Some((f, g)) => format!(
                    "V({},{}) ruled out: θ_{f} acts by zero, θ_{g} does not, and they lie in one two-sided cell",
                    o.epsilon, o.delta
                ),
            })
            .collect(),
    });

    Ok(B2Certificate {
        stages,
        two_sided_cells,
        y_square: a,
        theta_square: (b, c),
        polynomial,
        trace,
        determinant,
        x_bound,
        x_raw,
        x_classes,
        x_listed,
        generator_polynomial,
        generator_bound,
        generator_raw_count: generator_raw.len(),
        generator_classes,
        pairs,
        obstructions,
        one_dimensional,
        conclusion: "only V(1,1) and V(-1,-1) categorifiable: V(-1,1) and V(1,-1) violate annihilator consistency, and V_2 has no consistent ⟦θ_s⟧, ⟦θ_t⟧".into(),
    })
}

fn obstruction(
    cat: &Arc<BasedCategory>,
    generator: &str,
    matrix: &IntMatrix,
) -> Result<Obstruction> {
    let keep = [cat.lookup("e")?, cat.lookup(generator)?];
    let sub = Arc::new(cat.full_subcategory(&keep)?);
    let g = sub.lookup(generator)?;
    let mut matrices = vec![IntMatrix::zeros(2, 2); sub.len()];
    for id in sub.morphism_ids() {
        matrices[id.0] = if id == g {
            matrix.clone()
        } else {
            IntMatrix::identity(2)
        };
    }
    let rep = MatrixRep::new(sub.clone(), vec![vec!["v1".into(), "v2".into()]], matrices)?;
    if !validate_rep(&rep).is_valid() {
        return Err(Error::stage(6, "restricted representation is not valid"));
    }
    let mut cell_rep_matrices = Vec::new();
    let mut conjugate = false;
    for (_, cr) in all_cell_reps(&sub)? {
        cell_rep_matrices.push(cr.matrix(g).clone());
        conjugate |= reps_equivalent(&rep, &cr)?.is_some();
    }
    let cell = [g];
    let strongly_regular = is_strongly_regular(&sub, &cell)?.verdict;
    let numerical = strongly_regular && numerical_condition(&sub, &cell, true)?.verdict;
    Ok(Obstruction {
        generator: generator.to_string(),
        matrix: matrix.clone(),
        subcategory: sub.morphisms().iter().map(|m| m.name.clone()).collect(),
        transitive: is_transitive(&rep),
        cell_rep_matrices,
        conjugate_to_cell_rep: conjugate,
        strongly_regular,
        numerical_condition: numerical,
    })
}

impl B2Certificate {
    pub fn to_report(&self) -> ClassificationReport {
        let realized: BTreeSet<IntMatrix> =
            self.pairs.iter().map(|p| p.x.canonical_form()).collect();
        let eliminated = self
            .x_listed
            .iter()
            .map(|x| {
                let reason = if realized.contains(&x.canonical_form()) {
                    "realized by ⟦θ_s⟧⟦θ_t⟧ + ⟦θ_t⟧⟦θ_s⟧ only for (⟦θ_s⟧, ⟦θ_t⟧) = ([[1, 1], [1, 1]], [[2, 0], [0, 0]]) up to swap; excluded by the obstruction certificate".to_string()
                } else {
                    "not of the form ⟦θ_s⟧⟦θ_t⟧ + ⟦θ_t⟧⟦θ_s⟧ for candidates of x² − 2x = 0".to_string()
                };
                (x.clone(), reason)
            })
            .collect();
        let mut parameters = BTreeMap::new();
        parameters.insert("size".into(), MetaValue::Int(2));
        parameters.insert("x_entry_bound".into(), MetaValue::Int(self.x_bound));
        parameters.insert(
            "generator_entry_bound".into(),
            MetaValue::Int(self.generator_bound),
        );
        parameters.insert("trace".into(), MetaValue::Int(self.trace));
        parameters.insert("determinant".into(), MetaValue::Int(self.determinant));
        parameters.insert(
            "polynomial".into(),
            MetaValue::Text(format!("{:?}", self.polynomial)),
        );
        parameters.insert(
            "quotient".into(),
            MetaValue::from("coefficient of θ_stst dropped"),
        );
        ClassificationReport {
            solutions: Vec::new(),
            eliminated,
            conclusion: self.conclusion.clone(),
            parameters,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pipeline_runs() {
        let cert = b2_obstruction_pipeline().unwrap();
        assert_eq!(cert.y_square, 2);
        assert_eq!(cert.theta_square, (10, 4));
        assert_eq!(cert.x_raw.len(), 14);
        assert_eq!(cert.x_classes.len(), 7);
        assert_eq!(cert.x_listed.len(), 9);
        assert_eq!(cert.pairs.len(), 2);
        assert_eq!(cert.stages.len(), 7);
        assert_eq!(
            cert.one_dimensional[1].witness,
            Some(("s".into(), "t".into()))
        );
        assert_eq!(cert, b2_obstruction_pipeline().unwrap());
        let report = cert.to_report();
        assert!(report.solutions.is_empty());
        assert_eq!(report.eliminated.len(), 9);
    }
}
