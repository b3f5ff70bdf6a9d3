//! JSON documents for categories, representations, cell structures and
//! classification reports, and their conversion to and from the core types.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use catrep_core::based_cat::{
    fill_identity_products, BasedCategory, MetaValue, MorphismId, Multiset, ObjectId, OneMorphism,
};
use catrep_core::cells::CellStructure;
use catrep_core::classify::ClassificationReport;
use catrep_core::matrep::MatrixRep;
use catrep_core::matrix::IntMatrix;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] catrep_core::Error),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        // serde_json appends " at line L column C" to its own message
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        FormatError::Json {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

fn schema(msg: impl Into<String>) -> FormatError {
    FormatError::Schema(msg.into())
}

pub type Result<T, E = FormatError> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub name: String,
    pub dom: String,
    pub cod: String,
    #[serde(default)]
    pub identity: bool,
}

/// `composition` is keyed by `"F|G"`; products with an identity factor may
/// be omitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub one_morphisms: Vec<MorphismDoc>,
    #[serde(default)]
    pub composition: BTreeMap<String, BTreeMap<String, u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, Value>,
}

/// Identity products are written only where they differ from the unit law.
pub fn category_to_doc(cat: &BasedCategory) -> CategoryDoc {
    let one_morphisms = cat
        .morphisms()
        .iter()
        .map(|m| MorphismDoc {
            name: m.name.clone(),
            dom: cat.objects()[m.dom.0].clone(),
            cod: cat.objects()[m.cod.0].clone(),
            identity: m.is_identity,
        })
        .collect();
    let mut composition = BTreeMap::new();
    for ((f, g), ms) in cat.stored_products() {
        let (mf, mg) = (cat.morphism(f), cat.morphism(g));
        let unit = (mf.is_identity && *ms == Multiset::singleton(g))
            || (mg.is_identity && *ms == Multiset::singleton(f));
        if unit {
            continue;
        }
        let sum = ms
            .iter()
            .map(|(h, k)| (cat.name(h).to_string(), k))
            .collect();
        composition.insert(format!("{}|{}", cat.name(f), cat.name(g)), sum);
    }
    let involution = cat.involution().map(|inv| {
        cat.morphism_ids()
            .map(|f| (cat.name(f).to_string(), cat.name(inv[f.0]).to_string()))
            .collect()
    });
    let metadata = cat
        .metadata()
        .iter()
        .map(|(k, v)| {
            let v = match v {
                MetaValue::Int(i) => json!(i),
                MetaValue::Text(t) => json!(t),
            };
            (k.clone(), v)
        })
        .collect();
    CategoryDoc {
        objects: cat.objects().to_vec(),
        one_morphisms,
        composition,
        involution,
        metadata,
    }
}

/// Builds the category, filling in unit-law products that are not listed.
/// The axioms are not checked here.
pub fn category_from_doc(doc: &CategoryDoc) -> Result<BasedCategory> {
    let object = |label: &str| -> Result<ObjectId> {
        doc.objects
            .iter()
            .position(|o| o == label)
            .map(ObjectId)
            .ok_or_else(|| schema(format!("unknown object `{label}`")))
    };
    let morphisms = doc
        .one_morphisms
        .iter()
        .map(|m| {
            Ok(OneMorphism {
                name: m.name.clone(),
                dom: object(&m.dom)?,
                cod: object(&m.cod)?,
                is_identity: m.identity,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let id = |name: &str| -> Result<MorphismId> {
        morphisms
            .iter()
            .position(|m| m.name == name)
            .map(MorphismId)
            .ok_or_else(|| schema(format!("unknown 1-morphism `{name}`")))
    };
    let mut composition = BTreeMap::new();
    for (key, sum) in &doc.composition {
        let (l, r) = key
            .split_once('|')
            .filter(|(_, r)| !r.contains('|'))
            .ok_or_else(|| schema(format!("composition key `{key}` is not of the form `F|G`")))?;
        let mut ms = Multiset::new();
        for (h, &k) in sum {
            ms.add(id(h)?, k);
        }
        composition.insert((id(l)?, id(r)?), ms);
    }
    fill_identity_products(&morphisms, &mut composition);
    let involution = match &doc.involution {
        None => None,
        Some(map) => {
            let mut inv = Vec::with_capacity(morphisms.len());
            for m in &morphisms {
                let target = map
                    .get(&m.name)
                    .ok_or_else(|| schema(format!("involution does not assign `{}`", m.name)))?;
                inv.push(id(target)?);
            }
            if let Some(extra) = map.keys().find(|k| id(k).is_err()) {
                return Err(schema(format!(
                    "involution names unknown 1-morphism `{extra}`"
                )));
            }
            Some(inv)
        }
    };
    let mut cat = BasedCategory::new(doc.objects.clone(), morphisms, composition, involution)?;
    let meta = doc
        .metadata
        .iter()
        .map(|(k, v)| {
            let v = match v {
                Value::Number(n) if n.is_i64() => MetaValue::Int(n.as_i64().expect("checked")),
                Value::String(s) => MetaValue::Text(s.clone()),
                other => MetaValue::Text(other.to_string()),
            };
            (k.clone(), v)
        })
        .collect();
    cat.set_metadata(meta);
    Ok(cat)
}

pub fn parse_category(text: &str) -> Result<BasedCategory> {
    category_from_doc(&serde_json::from_str(text)?)
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_category(path: &Path) -> Result<BasedCategory> {
    parse_category(&read_file(path)?)
}

pub fn matrix_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_rows()
}

/// A matrix of the given shape; a `0 × c` matrix is written `[]`.
pub fn matrix_from_rows(rows: &[Vec<i64>], shape: (usize, usize), what: &str) -> Result<IntMatrix> {
    let (r, c) = shape;
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(schema(format!("matrix of {what} must be {r}×{c}")));
    }
    if r == 0 {
        return Ok(IntMatrix::zeros(0, c));
    }
    Ok(IntMatrix::from_rows(rows)?)
}

/// A square matrix given inline, e.g. on the command line.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(text)?;
    let c = rows.first().map_or(0, Vec::len);
    matrix_from_rows(&rows, (rows.len(), c), "the argument")
}

/// `category` is either a path (relative to the document) or an inline
/// category document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDoc {
    pub category: Value,
    #[serde(default)]
    pub ind_objects: BTreeMap<String, Vec<String>>,
    pub matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

pub fn rep_to_doc(rep: &MatrixRep) -> RepDoc {
    let cat = rep.category();
    RepDoc {
        category: serde_json::to_value(category_to_doc(cat)).expect("serializable"),
        ind_objects: cat
            .objects()
            .iter()
            .zip(rep.ind_lists())
            .map(|(o, l)| (o.clone(), l.clone()))
            .collect(),
        matrices: cat
            .morphism_ids()
            .map(|f| (cat.name(f).to_string(), matrix_rows(rep.matrix(f))))
            .collect(),
    }
}

/// Labels and matrices only, for representations listed under a known
/// category.
pub fn rep_body(rep: &MatrixRep) -> Value {
    let doc = rep_to_doc(rep);
    json!({ "ind_objects": doc.ind_objects, "matrices": doc.matrices })
}

/// Identities may be left out of `matrices`.
pub fn rep_from_doc(doc: &RepDoc, base: &Path) -> Result<MatrixRep> {
    let cat = match &doc.category {
        Value::String(p) => load_category(&base.join(p))?,
        v @ Value::Object(_) => category_from_doc(&serde_json::from_value(v.clone())?)?,
        _ => return Err(schema("`category` must be a path or a category document")),
    };
    rep_for_category(Arc::new(cat), &doc.ind_objects, &doc.matrices)
}

pub fn rep_for_category(
    cat: Arc<BasedCategory>,
    ind_objects: &BTreeMap<String, Vec<String>>,
    matrices: &BTreeMap<String, Vec<Vec<i64>>>,
) -> Result<MatrixRep> {
    if let Some(o) = ind_objects.keys().find(|o| cat.object_id(o).is_none()) {
        return Err(schema(format!("ind_objects names unknown object `{o}`")));
    }
    if let Some(f) = matrices.keys().find(|f| cat.id_of(f).is_none()) {
        return Err(schema(format!("matrices names unknown 1-morphism `{f}`")));
    }
    let ind: Vec<Vec<String>> = cat
        .objects()
        .iter()
        .map(|o| ind_objects.get(o).cloned().unwrap_or_default())
        .collect();
    let mut ms = Vec::with_capacity(cat.len());
    for f in cat.morphisms() {
        let shape = (ind[f.cod.0].len(), ind[f.dom.0].len());
        ms.push(match matrices.get(&f.name) {
            Some(rows) => matrix_from_rows(rows, shape, &f.name)?,
            None if f.is_identity => IntMatrix::identity(shape.0),
            None => return Err(schema(format!("no matrix given for `{}`", f.name))),
        });
    }
    Ok(MatrixRep::new(cat, ind, ms)?)
}

pub fn parse_rep(text: &str, base: &Path) -> Result<MatrixRep> {
    rep_from_doc(&serde_json::from_str(text)?, base)
}

pub fn load_rep(path: &Path) -> Result<MatrixRep> {
    let base = path.parent().unwrap_or(Path::new("."));
    parse_rep(&read_file(path)?, base)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellsDoc {
    pub side: String,
    pub cells: Vec<Vec<String>>,
    /// `[a, b]`: cell `a` lies strictly above cell `b`.
    pub order: Vec<[usize; 2]>,
}

pub fn cells_to_doc(cat: &BasedCategory, cs: &CellStructure) -> CellsDoc {
    CellsDoc {
        side: cs.side.as_str().to_string(),
        cells: cs
            .cells()
            .iter()
            .map(|c| c.iter().map(|&f| cat.name(f).to_string()).collect())
            .collect(),
        order: cs.order_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminatedDoc {
    pub matrix: Vec<Vec<i64>>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub solutions: Vec<Vec<Vec<i64>>>,
    pub eliminated: Vec<EliminatedDoc>,
    pub conclusion: String,
    pub parameters: Map<String, Value>,
}

pub fn report_to_doc(r: &ClassificationReport) -> ReportDoc {
    ReportDoc {
        solutions: r.solutions.iter().map(matrix_rows).collect(),
        eliminated: r
            .eliminated
            .iter()
            .map(|(m, reason)| EliminatedDoc {
                matrix: matrix_rows(m),
                reason: reason.clone(),
            })
            .collect(),
        conclusion: r.conclusion.clone(),
        parameters: r
            .parameters
            .iter()
            .map(|(k, v)| {
                let v = match v {
                    MetaValue::Int(i) => json!(i),
                    MetaValue::Text(t) => json!(t),
                };
                (k.clone(), v)
            })
            .collect(),
    }
}

/// Names in `list` (comma separated) resolved against the category.
pub fn resolve_names(cat: &BasedCategory, list: &str) -> Result<Vec<MorphismId>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|n| Ok(cat.lookup(n)?))
        .collect()
}

pub fn sum_to_json(cat: &BasedCategory, ms: &Multiset) -> Value {
    let mut map = Map::new();
    for (h, k) in ms.iter() {
        map.insert(cat.name(h).to_string(), json!(k));
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use catrep_core::based_cat::quasi_idempotent_category;

    #[test]
    fn exotic_category_text() {
        let doc = category_to_doc(&quasi_idempotent_category(2));
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains(r#""composition":{"F|F":{"F":2}}"#), "{text}");
        let back = parse_category(&text).unwrap();
        assert!(back.same_structure(&quasi_idempotent_category(2)));
    }

    #[test]
    fn json_errors_carry_positions() {
        match parse_category("{\n  \"objects\": [1]\n}") {
            Err(FormatError::Json { line, column, .. }) => assert_eq!((line, column), (2, 15)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_composition_key() {
        let text = r#"{"objects":["x"],"one_morphisms":[{"name":"1","dom":"x","cod":"x","identity":true}],
            "composition":{"1":{"1":1}}}"#;
        assert!(matches!(parse_category(text), Err(FormatError::Schema(_))));
    }
}
