//! Based rings given by a unitriangular basis of a monoid ring, and the
//! one-object categories they decategorify.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{BasedCategory, MorphismId, Multiset, ObjectId, OneMorphism, CLUB};
use crate::error::{Error, Result};
use crate::group::MultTable;

/// How ring multiplication is read as composition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductOrder {
    /// `b_x ∘ b_y = b_x · b_y`.
    Ring,
    /// `b_x ∘ b_y = b_y · b_x`.
    Opposite,
}

/// One basis element `b = w + Σ_{v < w} a_v v` of `ℤ[M]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KLBasisElement {
    pub label: String,
    /// Index of the leading monoid element `w`.
    pub leading: usize,
    /// Coefficients over the monoid elements, indexed like the table.
    pub expansion: Vec<i64>,
}

/// A monoid, a total order on its elements, and a basis unitriangular with
/// respect to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KLRingData {
    elements: MultTable,
    rank: Vec<usize>,
    basis: Vec<KLBasisElement>,
    product_order: ProductOrder,
}

impl KLRingData {
    /// `order` lists the monoid elements from smallest to largest. Each basis
    /// element must have coefficient 1 at its leading element and be supported
    /// on elements not above it; leading elements must be distinct.
    pub fn new(
        elements: MultTable,
        order: Vec<usize>,
        basis: Vec<KLBasisElement>,
        product_order: ProductOrder,
    ) -> Result<Self> {
        elements.check_monoid()?;
        let n = elements.order();
        let mut rank = vec![usize::MAX; n];
        if order.len() != n {
            return Err(Error::invalid("order must list every monoid element once"));
        }
        for (pos, &x) in order.iter().enumerate() {
            if x >= n || rank[x] != usize::MAX {
                return Err(Error::invalid("order must list every monoid element once"));
            }
            rank[x] = pos;
        }
        if basis.len() != n {
            return Err(Error::invalid(format!(
                "basis has {} elements, monoid has {n}",
                basis.len()
            )));
        }
        let mut led = vec![false; n];
        for b in &basis {
            if b.leading >= n || b.expansion.len() != n {
                return Err(Error::invalid(format!(
                    "basis element {} is malformed",
                    b.label
                )));
            }
            if core::mem::replace(&mut led[b.leading], true) {
                return Err(Error::invalid(format!(
                    "two basis elements lead with {}",
                    elements.label(b.leading)
                )));
            }
            if b.expansion[b.leading] != 1 {
                return Err(Error::invalid(format!(
                    "basis element {} does not have leading coefficient 1",
                    b.label
                )));
            }
            if let Some(v) = (0..n).find(|&v| b.expansion[v] != 0 && rank[v] > rank[b.leading]) {
                return Err(Error::invalid(format!(
                    "basis element {} involves {}, which is above its leading term",
                    b.label,
                    elements.label(v)
                )));
            }
        }
        Ok(Self {
            elements,
            rank,
            basis,
            product_order,
        })
    }

    pub fn elements(&self) -> &MultTable {
        &self.elements
    }

    pub fn basis(&self) -> &[KLBasisElement] {
        &self.basis
    }

    pub fn product_order(&self) -> ProductOrder {
        self.product_order
    }

    /// Product in `ℤ[M]` of two element-coefficient vectors.
    pub fn ring_product(&self, a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
        let n = self.elements.order();
        let mut out = vec![0i64; n];
        for (x, &ax) in a.iter().enumerate().filter(|(_, c)| **c != 0) {
            for (y, &by) in b.iter().enumerate().filter(|(_, c)| **c != 0) {
                let p = self.elements.mul(x, y);
                out[p] = ax
                    .checked_mul(by)
                    .and_then(|t| out[p].checked_add(t))
                    .ok_or(Error::Overflow("multiplying in the monoid ring"))?;
            }
        }
        Ok(out)
    }

    /// Coordinates of an element of `ℤ[M]` in the basis, by peeling off the
    /// largest remaining leading term.
    pub fn to_basis(&self, v: &[i64]) -> Result<Vec<i64>> {
        let n = self.elements.order();
        let mut rest = v.to_vec();
        let mut by_rank: Vec<usize> = (0..n).collect();
        by_rank.sort_by_key(|&i| core::cmp::Reverse(self.rank[self.basis[i].leading]));
        let mut coords = vec![0i64; n];
        for i in by_rank {
            let b = &self.basis[i];
            let c = rest[b.leading];
            if c == 0 {
                continue;
            }
            coords[i] = c;
            for (r, &e) in rest.iter_mut().zip(&b.expansion) {
                *r = e
                    .checked_mul(c)
                    .and_then(|t| r.checked_sub(t))
                    .ok_or(Error::Overflow("changing basis"))?;
            }
        }
        debug_assert!(rest.iter().all(|&r| r == 0));
        Ok(coords)
    }

    pub fn from_basis(&self, coords: &[i64]) -> Result<Vec<i64>> {
        let n = self.elements.order();
        let mut out = vec![0i64; n];
        for (b, &c) in self.basis.iter().zip(coords) {
            for (o, &e) in out.iter_mut().zip(&b.expansion) {
                *o = e
                    .checked_mul(c)
                    .and_then(|t| o.checked_add(t))
                    .ok_or(Error::Overflow("changing basis"))?;
            }
        }
        Ok(out)
    }
}

/// One-object category whose 1-morphisms are the basis elements and whose
/// structure constants are the basis coordinates of products. Fails with
/// [`Error::NotBasedRing`] if a coordinate is negative. When the monoid is a
/// group and inverting elements permutes the basis, that permutation is the
/// involution.
pub fn build_kl_category(data: &KLRingData) -> Result<BasedCategory> {
    let table = data.elements();
    let n = table.order();
    let e = table.check_monoid()?;
    let unit: Vec<i64> = (0..n).map(|x| i64::from(x == e)).collect();
    let identity = data
        .basis()
        .iter()
        .position(|b| b.expansion == unit)
        .ok_or_else(|| Error::invalid("no basis element equals the unit"))?;

    let morphisms: Vec<OneMorphism> = data
        .basis()
        .iter()
        .enumerate()
        .map(|(i, b)| OneMorphism {
            name: b.label.clone(),
            dom: ObjectId(0),
            cod: ObjectId(0),
            is_identity: i == identity,
        })
        .collect();

    let mut composition = BTreeMap::new();
    for (x, bx) in data.basis().iter().enumerate() {
        for (y, by) in data.basis().iter().enumerate() {
            let product = match data.product_order() {
                ProductOrder::Ring => data.ring_product(&bx.expansion, &by.expansion)?,
                ProductOrder::Opposite => data.ring_product(&by.expansion, &bx.expansion)?,
            };
            let coords = data.to_basis(&product)?;
            let mut ms = Multiset::new();
            for (h, &c) in coords.iter().enumerate() {
                if c < 0 {
                    return Err(Error::NotBasedRing {
                        left: bx.label.clone(),
                        right: by.label.clone(),
                        target: data.basis()[h].label.clone(),
                        coefficient: c,
                    });
                }
                ms.add(MorphismId(h), c as u64);
            }
            composition.insert((MorphismId(x), MorphismId(y)), ms);
        }
    }

    let involution = if table.is_group() {
        let inv = table.inverses();
        let images: Option<Vec<MorphismId>> = data
            .basis()
            .iter()
            .map(|b| {
                let mut flipped = vec![0i64; n];
                for (g, &c) in b.expansion.iter().enumerate() {
                    flipped[inv[g]] = c;
                }
                data.basis()
                    .iter()
                    .position(|other| other.expansion == flipped)
                    .map(MorphismId)
            })
            .collect();
        images
    } else {
        None
    };

    BasedCategory::new(vec![CLUB.to_string()], morphisms, composition, involution)
}
