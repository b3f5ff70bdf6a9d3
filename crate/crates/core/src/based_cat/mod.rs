//! Decategorified finitary 2-categories.
//!
//! A [`BasedCategory`] records the objects, the isomorphism classes of
//! indecomposable 1-morphisms, and the structure constants `c(F, G; H)`: the
//! multiplicity of `H` as a direct summand of `F ∘ G`. Formal sums of
//! indecomposables are [`Multiset`]s; they are never promoted to 1-morphisms.

mod builders;
mod kl;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub use builders::{
    build_cartan_category, build_dihedral_soergel, build_group_category, build_monoid_category,
    cartan_name, dihedral_kl_data, CLUB,
};
pub use kl::{build_kl_category, KLBasisElement, KLRingData, ProductOrder};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorphismId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneMorphism {
    pub name: String,
    pub dom: ObjectId,
    pub cod: ObjectId,
    pub is_identity: bool,
}

/// A finite formal sum of indecomposable 1-morphisms with coefficients in ℕ.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset(BTreeMap<MorphismId, u64>);

impl Multiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(id: MorphismId) -> Self {
        Self::from_pairs([(id, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (MorphismId, u64)>) -> Self {
        let mut m = Self::new();
        for (id, k) in pairs {
            m.add(id, k);
        }
        m
    }

    pub fn get(&self, id: MorphismId) -> u64 {
        self.0.get(&id).copied().unwrap_or(0)
    }

    pub fn add(&mut self, id: MorphismId, k: u64) {
        if k > 0 {
            *self.0.entry(id).or_insert(0) += k;
        }
    }

    pub fn add_all(&mut self, other: &Multiset, factor: u64) {
        for (&id, &k) in &other.0 {
            self.add(id, k * factor);
        }
    }

    pub fn remove(&mut self, id: MorphismId) -> u64 {
        self.0.remove(&id).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of summands counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (MorphismId, u64)> + '_ {
        self.0.iter().map(|(&id, &k)| (id, k))
    }

    pub fn support(&self) -> impl Iterator<Item = MorphismId> + '_ {
        self.0.keys().copied()
    }

    pub fn scaled(&self, factor: u64) -> Self {
        let mut m = Self::new();
        m.add_all(self, factor);
        m
    }

    /// Multiset obtained by applying `f` to every summand.
    pub fn map_ids(&self, mut f: impl FnMut(MorphismId) -> MorphismId) -> Self {
        Self::from_pairs(self.iter().map(|(id, k)| (f(id), k)))
    }
}

impl FromIterator<(MorphismId, u64)> for Multiset {
    fn from_iter<T: IntoIterator<Item = (MorphismId, u64)>>(iter: T) -> Self {
        Self::from_pairs(iter)
    }
}

/// Free-form annotations carried alongside a category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetaValue {
    Int(i64),
    Text(String),
}

impl From<i64> for MetaValue {
    fn from(v: i64) -> Self {
        MetaValue::Int(v)
    }
}

impl From<&str> for MetaValue {
    fn from(v: &str) -> Self {
        MetaValue::Text(v.to_string())
    }
}

impl From<String> for MetaValue {
    fn from(v: String) -> Self {
        MetaValue::Text(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedCategory {
    objects: Vec<String>,
    morphisms: Vec<OneMorphism>,
    composition: BTreeMap<(MorphismId, MorphismId), Multiset>,
    involution: Option<Vec<MorphismId>>,
    metadata: BTreeMap<String, MetaValue>,
}

impl BasedCategory {
    /// Assembles a category after structural checks (unique names, ids in
    /// range, involution of the right length). The axioms themselves are
    /// checked by [`BasedCategory::validate`]. Zero multisets are dropped.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<OneMorphism>,
        composition: BTreeMap<(MorphismId, MorphismId), Multiset>,
        involution: Option<Vec<MorphismId>>,
    ) -> Result<Self> {
        let unique: BTreeSet<&String> = objects.iter().collect();
        if unique.len() != objects.len() {
            return Err(Error::invalid("object labels must be distinct"));
        }
        let unique: BTreeSet<&String> = morphisms.iter().map(|m| &m.name).collect();
        if unique.len() != morphisms.len() {
            return Err(Error::invalid("1-morphism names must be distinct"));
        }
        if let Some(m) = morphisms.iter().find(|m| m.name.contains('|')) {
            return Err(Error::invalid(format!(
                "1-morphism name `{}` contains the reserved separator `|`",
                m.name
            )));
        }
        let n_obj = objects.len();
        if let Some(m) = morphisms
            .iter()
            .find(|m| m.dom.0 >= n_obj || m.cod.0 >= n_obj)
        {
            return Err(Error::invalid(format!(
                "1-morphism `{}` refers to a missing object",
                m.name
            )));
        }
        let n = morphisms.len();
        let in_range = |id: MorphismId| id.0 < n;
        for ((f, g), ms) in &composition {
            if !in_range(*f) || !in_range(*g) || !ms.support().all(in_range) {
                return Err(Error::invalid("composition refers to a missing 1-morphism"));
            }
        }
        if let Some(inv) = &involution {
            if inv.len() != n || !inv.iter().copied().all(in_range) {
                return Err(Error::invalid(
                    "involution must assign a 1-morphism to every 1-morphism",
                ));
            }
        }
        let composition = composition
            .into_iter()
            .filter(|(_, ms)| !ms.is_empty())
            .collect();
        Ok(Self {
            objects,
            morphisms,
            composition,
            involution,
            metadata: BTreeMap::new(),
        })
    }

    pub fn with_metadata(mut self, key: &str, value: impl Into<MetaValue>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    pub fn metadata(&self) -> &BTreeMap<String, MetaValue> {
        &self.metadata
    }

    pub fn metadata_int(&self, key: &str) -> Option<i64> {
        match self.metadata.get(key) {
            Some(MetaValue::Int(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn set_metadata(&mut self, metadata: BTreeMap<String, MetaValue>) {
        self.metadata = metadata;
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_id(&self, label: &str) -> Option<ObjectId> {
        self.objects.iter().position(|o| o == label).map(ObjectId)
    }

    pub fn morphisms(&self) -> &[OneMorphism] {
        &self.morphisms
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorphismId> {
        (0..self.morphisms.len()).map(MorphismId)
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn morphism(&self, id: MorphismId) -> &OneMorphism {
        &self.morphisms[id.0]
    }

    pub fn name(&self, id: MorphismId) -> &str {
        &self.morphisms[id.0].name
    }

    pub fn id_of(&self, name: &str) -> Option<MorphismId> {
        self.morphisms
            .iter()
            .position(|m| m.name == name)
            .map(MorphismId)
    }

    /// Like [`BasedCategory::id_of`] but with an error naming the culprit.
    pub fn lookup(&self, name: &str) -> Result<MorphismId> {
        self.id_of(name).ok_or_else(|| Error::Unknown {
            kind: "1-morphism",
            name: name.to_string(),
        })
    }

    pub fn identity_of(&self, obj: ObjectId) -> Option<MorphismId> {
        self.morphism_ids().find(|&id| {
            let m = self.morphism(id);
            m.is_identity && m.dom == obj
        })
    }

    /// 1-morphisms `i → j`, in declaration order.
    pub fn hom(&self, dom: ObjectId, cod: ObjectId) -> Vec<MorphismId> {
        self.morphism_ids()
            .filter(|&id| self.morphism(id).dom == dom && self.morphism(id).cod == cod)
            .collect()
    }

    pub fn composable(&self, f: MorphismId, g: MorphismId) -> bool {
        self.morphism(f).dom == self.morphism(g).cod
    }

    /// The decomposition of `f ∘ g`.
    pub fn compose(&self, f: MorphismId, g: MorphismId) -> Result<Multiset> {
        if !self.composable(f, g) {
            return Err(Error::CompositionUndefined {
                left: self.name(f).to_string(),
                right: self.name(g).to_string(),
            });
        }
        Ok(self.composition.get(&(f, g)).cloned().unwrap_or_default())
    }

    pub fn compose_names(&self, f: &str, g: &str) -> Result<Multiset> {
        self.compose(self.lookup(f)?, self.lookup(g)?)
    }

    /// `c(F, G; H)`, zero for non-composable pairs.
    pub fn constant(&self, f: MorphismId, g: MorphismId, h: MorphismId) -> u64 {
        self.composition.get(&(f, g)).map_or(0, |m| m.get(h))
    }

    pub fn stored_products(&self) -> impl Iterator<Item = ((MorphismId, MorphismId), &Multiset)> {
        self.composition.iter().map(|(&k, v)| (k, v))
    }

    /// Bilinear extension of composition to formal sums.
    pub fn compose_sums(&self, a: &Multiset, b: &Multiset) -> Result<Multiset> {
        let mut out = Multiset::new();
        for (f, x) in a.iter() {
            for (g, y) in b.iter() {
                out.add_all(&self.compose(f, g)?, x * y);
            }
        }
        Ok(out)
    }

    pub fn involution(&self) -> Option<&[MorphismId]> {
        self.involution.as_deref()
    }

    pub fn star(&self, f: MorphismId) -> Option<MorphismId> {
        self.involution.as_ref().map(|inv| inv[f.0])
    }

    /// Formats a multiset as `2·F + G`.
    pub fn format_sum(&self, m: &Multiset) -> String {
        if m.is_empty() {
            return "0".to_string();
        }
        m.iter()
            .map(|(id, k)| {
                if k == 1 {
                    self.name(id).to_string()
                } else {
                    format!("{k}·{}", self.name(id))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Same data apart from metadata.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.composition == other.composition
            && self.involution == other.involution
    }

    /// Restriction to a set of 1-morphisms closed under composition and
    /// containing the identities of every object it touches.
    pub fn full_subcategory(&self, keep: &[MorphismId]) -> Result<Self> {
        let keep_set: BTreeSet<MorphismId> = keep.iter().copied().collect();
        let mut used_objects: BTreeSet<ObjectId> = BTreeSet::new();
        for &f in &keep_set {
            used_objects.insert(self.morphism(f).dom);
            used_objects.insert(self.morphism(f).cod);
        }
        for &o in &used_objects {
            match self.identity_of(o) {
                Some(id) if keep_set.contains(&id) => {}
                _ => {
                    return Err(Error::precondition(format!(
                        "identity of object {} is not in the subcategory",
                        self.objects[o.0]
                    )))
                }
            }
        }
        let objects: Vec<ObjectId> = used_objects.into_iter().collect();
        let new_obj = |o: ObjectId| ObjectId(objects.iter().position(|&x| x == o).unwrap());
        let kept: Vec<MorphismId> = keep_set.iter().copied().collect();
        let new_id = |f: MorphismId| kept.iter().position(|&x| x == f).map(MorphismId);
        let morphisms = kept
            .iter()
            .map(|&f| {
                let m = self.morphism(f);
                OneMorphism {
                    name: m.name.clone(),
                    dom: new_obj(m.dom),
                    cod: new_obj(m.cod),
                    is_identity: m.is_identity,
                }
            })
            .collect();
        let mut composition = BTreeMap::new();
        for &f in &kept {
            for &g in &kept {
                if !self.composable(f, g) {
                    continue;
                }
                let prod = self.compose(f, g)?;
                let mut mapped = Multiset::new();
                for (h, k) in prod.iter() {
                    let Some(h2) = new_id(h) else {
                        return Err(Error::precondition(format!(
                            "{} ∘ {} has the summand {} outside the subcategory",
                            self.name(f),
                            self.name(g),
                            self.name(h)
                        )));
                    };
                    mapped.add(h2, k);
                }
                composition.insert((new_id(f).unwrap(), new_id(g).unwrap()), mapped);
            }
        }
        let involution = match &self.involution {
            Some(inv) => {
                let mapped: Option<Vec<MorphismId>> =
                    kept.iter().map(|&f| new_id(inv[f.0])).collect();
                mapped
            }
            None => None,
        };
        Self::new(
            objects.iter().map(|o| self.objects[o.0].clone()).collect(),
            morphisms,
            composition,
            involution,
        )
    }

    /// Checks every axiom of a decategorified finitary 2-category. Structure
    /// constants are unsigned, so non-negativity holds by construction.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let name = |id: MorphismId| self.name(id).to_string();

        for (o, label) in self.objects.iter().enumerate() {
            let ids: Vec<&OneMorphism> = self
                .morphisms
                .iter()
                .filter(|m| m.is_identity && m.dom == ObjectId(o))
                .collect();
            if ids.len() != 1 {
                violations.push(Violation::IdentityCount {
                    object: label.clone(),
                    count: ids.len(),
                });
            }
        }
        for m in &self.morphisms {
            if m.is_identity && m.dom != m.cod {
                violations.push(Violation::IdentityEndpoints {
                    identity: m.name.clone(),
                });
            }
        }

        for (&(f, g), ms) in &self.composition {
            if !self.composable(f, g) {
                violations.push(Violation::NotComposable {
                    left: name(f),
                    right: name(g),
                });
                continue;
            }
            for h in ms.support() {
                let (mh, mf, mg) = (self.morphism(h), self.morphism(f), self.morphism(g));
                if mh.dom != mg.dom || mh.cod != mf.cod {
                    violations.push(Violation::WrongSummand {
                        left: name(f),
                        right: name(g),
                        summand: name(h),
                    });
                }
            }
        }

        for unit in self
            .morphism_ids()
            .filter(|&u| self.morphism(u).is_identity)
        {
            let obj = self.morphism(unit).dom;
            for f in self.morphism_ids() {
                let expected = Multiset::singleton(f);
                if self.morphism(f).cod == obj
                    && self.compose(unit, f).ok().as_ref() != Some(&expected)
                {
                    violations.push(Violation::UnitLaw {
                        identity: name(unit),
                        morphism: name(f),
                        side: Side::Left,
                    });
                }
                if self.morphism(f).dom == obj
                    && self.compose(f, unit).ok().as_ref() != Some(&expected)
                {
                    violations.push(Violation::UnitLaw {
                        identity: name(unit),
                        morphism: name(f),
                        side: Side::Right,
                    });
                }
            }
        }

        for f in self.morphism_ids() {
            for g in self.morphism_ids().filter(|&g| self.composable(f, g)) {
                let fg = self.composition.get(&(f, g)).cloned().unwrap_or_default();
                for k in self.morphism_ids().filter(|&k| self.composable(g, k)) {
                    let gk = self.composition.get(&(g, k)).cloned().unwrap_or_default();
                    let lhs = self.compose_sums(&fg, &Multiset::singleton(k));
                    let rhs = self.compose_sums(&Multiset::singleton(f), &gk);
                    if lhs.is_err() || rhs.is_err() || lhs != rhs {
                        violations.push(Violation::Associativity {
                            f: name(f),
                            g: name(g),
                            k: name(k),
                        });
                    }
                }
            }
        }

        if let Some(inv) = &self.involution {
            let image: BTreeSet<MorphismId> = inv.iter().copied().collect();
            if image.len() != inv.len() {
                violations.push(Violation::InvolutionNotBijective);
            }
            for f in self.morphism_ids() {
                let (m, ms) = (self.morphism(f), self.morphism(inv[f.0]));
                if ms.dom != m.cod || ms.cod != m.dom {
                    violations.push(Violation::InvolutionEndpoints { morphism: name(f) });
                }
                if m.is_identity && inv[f.0] != f {
                    violations.push(Violation::InvolutionMovesIdentity { identity: name(f) });
                }
            }
            if violations.is_empty() {
                for f in self.morphism_ids() {
                    for g in self.morphism_ids().filter(|&g| self.composable(f, g)) {
                        let starred = self.compose(f, g).map(|m| m.map_ids(|h| inv[h.0])).ok();
                        let reversed = self.compose(inv[g.0], inv[f.0]).ok();
                        if starred != reversed {
                            violations.push(Violation::InvolutionCompatibility {
                                left: name(f),
                                right: name(g),
                            });
                        }
                    }
                }
            }
        }

        ValidationReport { violations }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    IdentityCount {
        object: String,
        count: usize,
    },
    IdentityEndpoints {
        identity: String,
    },
    NotComposable {
        left: String,
        right: String,
    },
    WrongSummand {
        left: String,
        right: String,
        summand: String,
    },
    UnitLaw {
        identity: String,
        morphism: String,
        side: Side,
    },
    Associativity {
        f: String,
        g: String,
        k: String,
    },
    InvolutionNotBijective,
    InvolutionEndpoints {
        morphism: String,
    },
    InvolutionMovesIdentity {
        identity: String,
    },
    InvolutionCompatibility {
        left: String,
        right: String,
    },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::IdentityCount { .. } => "identity-count",
            Violation::IdentityEndpoints { .. } => "identity-endpoints",
            Violation::NotComposable { .. } => "not-composable",
            Violation::WrongSummand { .. } => "wrong-summand",
            Violation::UnitLaw { .. } => "unit-law",
            Violation::Associativity { .. } => "associativity",
            Violation::InvolutionNotBijective => "involution-not-bijective",
            Violation::InvolutionEndpoints { .. } => "involution-endpoints",
            Violation::InvolutionMovesIdentity { .. } => "involution-moves-identity",
            Violation::InvolutionCompatibility { .. } => "involution-compatibility",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IdentityCount { object, count } => {
                write!(f, "object {object} has {count} identity 1-morphisms")
            }
            Violation::IdentityEndpoints { identity } => {
                write!(f, "identity {identity} is not an endomorphism")
            }
            Violation::NotComposable { left, right } => {
                write!(
                    f,
                    "composition entry {left}|{right} for a non-composable pair"
                )
            }
            Violation::WrongSummand {
                left,
                right,
                summand,
            } => {
                write!(
                    f,
                    "{left} ∘ {right} lists {summand} with the wrong domain or codomain"
                )
            }
            Violation::UnitLaw {
                identity,
                morphism,
                side: Side::Left,
            } => write!(f, "{identity} ∘ {morphism} ≠ {morphism}"),
            Violation::UnitLaw {
                identity,
                morphism,
                side: Side::Right,
            } => write!(f, "{morphism} ∘ {identity} ≠ {morphism}"),
            Violation::Associativity { f: a, g: b, k: c } => {
                write!(f, "({a} ∘ {b}) ∘ {c} ≠ {a} ∘ ({b} ∘ {c})")
            }
            Violation::InvolutionNotBijective => f.write_str("involution is not a bijection"),
            Violation::InvolutionEndpoints { morphism } => {
                write!(f, "{morphism}* does not swap domain and codomain")
            }
            Violation::InvolutionMovesIdentity { identity } => {
                write!(f, "{identity}* ≠ {identity}")
            }
            Violation::InvolutionCompatibility { left, right } => {
                write!(f, "({left} ∘ {right})* ≠ {right}* ∘ {left}*")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `left ∘ right = Σ summands`, by name.
type NamedProduct = (String, String, Vec<(String, u64)>);

/// Name-based construction helper. Identity compositions not given
/// explicitly are filled in by [`CategoryBuilder::build`].
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<OneMorphism>,
    products: Vec<NamedProduct>,
    involution: Option<Vec<(String, String)>>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an object together with its identity 1-morphism.
    pub fn object(mut self, label: &str, identity: &str) -> Self {
        let id = ObjectId(self.objects.len());
        self.objects.push(label.to_string());
        self.morphisms.push(OneMorphism {
            name: identity.to_string(),
            dom: id,
            cod: id,
            is_identity: true,
        });
        self
    }

    pub fn morphism(mut self, name: &str, dom: &str, cod: &str) -> Self {
        let find = |o: &str| {
            ObjectId(
                self.objects
                    .iter()
                    .position(|x| x == o)
                    .unwrap_or(usize::MAX),
            )
        };
        let (dom, cod) = (find(dom), find(cod));
        self.morphisms.push(OneMorphism {
            name: name.to_string(),
            dom,
            cod,
            is_identity: false,
        });
        self
    }

    pub fn product(mut self, left: &str, right: &str, summands: &[(&str, u64)]) -> Self {
        self.products.push((
            left.to_string(),
            right.to_string(),
            summands.iter().map(|(n, k)| (n.to_string(), *k)).collect(),
        ));
        self
    }

    pub fn star(mut self, from: &str, to: &str) -> Self {
        self.involution
            .get_or_insert_with(Vec::new)
            .push((from.to_string(), to.to_string()));
        self
    }

    pub fn build(self) -> Result<BasedCategory> {
        let find = |n: &str| -> Result<MorphismId> {
            self.morphisms
                .iter()
                .position(|m| m.name == n)
                .map(MorphismId)
                .ok_or_else(|| Error::Unknown {
                    kind: "1-morphism",
                    name: n.to_string(),
                })
        };
        let mut composition = BTreeMap::new();
        for (l, r, sums) in &self.products {
            let mut ms = Multiset::new();
            for (h, k) in sums {
                ms.add(find(h)?, *k);
            }
            composition.insert((find(l)?, find(r)?), ms);
        }
        fill_identity_products(&self.morphisms, &mut composition);
        let involution = match &self.involution {
            None => None,
            Some(pairs) => {
                let mut inv: Vec<MorphismId> = (0..self.morphisms.len()).map(MorphismId).collect();
                for (a, b) in pairs {
                    inv[find(a)?.0] = find(b)?;
                }
                Some(inv)
            }
        };
        BasedCategory::new(self.objects, self.morphisms, composition, involution)
    }
}

/// Inserts `1 ∘ F = F` and `F ∘ 1 = F` wherever no entry is present.
pub fn fill_identity_products(
    morphisms: &[OneMorphism],
    composition: &mut BTreeMap<(MorphismId, MorphismId), Multiset>,
) {
    for (u, mu) in morphisms.iter().enumerate() {
        if !mu.is_identity {
            continue;
        }
        for (f, mf) in morphisms.iter().enumerate() {
            let (u, f) = (MorphismId(u), MorphismId(f));
            if mf.cod == mu.dom {
                composition
                    .entry((u, f))
                    .or_insert_with(|| Multiset::singleton(f));
            }
            if mf.dom == mu.dom {
                composition
                    .entry((f, u))
                    .or_insert_with(|| Multiset::singleton(f));
            }
        }
    }
}

/// The one-object category `{1, F}` with `F ∘ F = F^{⊕m}`.
pub fn quasi_idempotent_category(m: u64) -> BasedCategory {
    CategoryBuilder::new()
        .object(CLUB, "1")
        .morphism("F", CLUB, CLUB)
        .product("F", "F", &[("F", m)])
        .star("F", "F")
        .build()
        .expect("well-formed")
        .with_metadata("family", "quasi-idempotent")
        .with_metadata("m", m as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn exotic_category_is_valid() {
        let cat = quasi_idempotent_category(2);
        assert!(cat.validate().is_valid(), "{:?}", cat.validate());
        let one = cat.lookup("1").unwrap();
        let f = cat.lookup("F").unwrap();
        assert_eq!(cat.compose(one, f).unwrap(), Multiset::singleton(f));
        assert_eq!(cat.compose(f, f).unwrap(), Multiset::from_pairs([(f, 2)]));
    }

    #[test]
    fn broken_associativity_is_reported_once() {
        // c(F,F;F) = 1 and G∘G = G, G∘F = F, but F∘G = 0:
        // (F∘G)∘F = 0 while F∘(G∘F) = F
        let cat = CategoryBuilder::new()
            .object(CLUB, "1")
            .morphism("F", CLUB, CLUB)
            .morphism("G", CLUB, CLUB)
            .product("F", "F", &[("F", 1)])
            .product("G", "F", &[("F", 1)])
            .product("G", "G", &[("G", 1)])
            .build()
            .unwrap();
        let report = cat.validate();
        assert_eq!(
            report.violations,
            vec![Violation::Associativity {
                f: "F".into(),
                g: "G".into(),
                k: "F".into()
            }]
        );
    }

    #[test]
    fn compose_requires_matching_endpoints() {
        let cat = CategoryBuilder::new()
            .object("i", "1i")
            .object("j", "1j")
            .morphism("F", "i", "j")
            .build()
            .unwrap();
        assert!(cat.validate().is_valid());
        let err = cat.compose_names("F", "F").unwrap_err();
        assert!(matches!(err, Error::CompositionUndefined { .. }));
        let f = cat.lookup("F").unwrap();
        assert_eq!(
            cat.compose_names("1j", "F").unwrap(),
            Multiset::singleton(f)
        );
    }

    #[test]
    fn reserved_separator_is_rejected() {
        let err = CategoryBuilder::new()
            .object("o", "a|b")
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn missing_identity_is_reported() {
        let mut cat = quasi_idempotent_category(1);
        let morphisms: Vec<OneMorphism> = cat
            .morphisms()
            .iter()
            .cloned()
            .map(|mut m| {
                m.is_identity = false;
                m
            })
            .collect();
        let comp = cat.composition.clone();
        cat = BasedCategory::new(cat.objects.clone(), morphisms, comp, None).unwrap();
        let report = cat.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::IdentityCount { count: 0, .. })));
    }

    #[test]
    fn incompatible_involution_is_reported() {
        // a category with F∘G = F and G∘F = G; swapping F and G breaks (F∘G)* = G*∘F*
        let cat = CategoryBuilder::new()
            .object(CLUB, "1")
            .morphism("F", CLUB, CLUB)
            .morphism("G", CLUB, CLUB)
            .product("F", "F", &[("F", 1)])
            .product("F", "G", &[("F", 1)])
            .product("G", "F", &[("G", 1)])
            .product("G", "G", &[("G", 1)])
            .star("F", "F")
            .star("G", "G")
            .build()
            .unwrap();
        let report = cat.validate();
        assert!(report
            .violations
            .iter()
            .all(|v| matches!(v, Violation::InvolutionCompatibility { .. })));
        assert!(!report.is_valid());
    }

    #[test]
    fn full_subcategory_restricts() {
        let cat = build_dihedral_soergel(4).unwrap();
        let e = cat.lookup("e").unwrap();
        let s = cat.lookup("s").unwrap();
        let sub = cat.full_subcategory(&[e, s]).unwrap();
        assert_eq!(sub.len(), 2);
        assert!(sub.validate().is_valid());
        assert_eq!(sub.compose_names("s", "s").unwrap().total(), 2);
        let t = cat.lookup("t").unwrap();
        assert!(cat.full_subcategory(&[e, s, t]).is_err());
    }
}
