//! Finite groups and monoids given by multiplication tables.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite magma given by its Cayley table: `table[a][b]` is the index of `a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultTable {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl MultTable {
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::invalid("multiplication table has no elements"));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::invalid(format!(
                "multiplication table must be {n}×{n}"
            )));
        }
        if let Some(&bad) = table.iter().flatten().find(|&&x| x >= n) {
            return Err(Error::invalid(format!("table entry {bad} out of range")));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::invalid("element labels must be distinct"));
        }
        Ok(Self { labels, table })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> Option<usize> {
        let n = self.order();
        (0..n).find(|&e| (0..n).all(|a| self.mul(e, a) == a && self.mul(a, e) == a))
    }

    pub fn find_non_associative(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Checks the monoid axioms and returns the identity.
    pub fn check_monoid(&self) -> Result<usize> {
        if let Some((a, b, c)) = self.find_non_associative() {
            return Err(Error::invalid(format!(
                "not associative: ({0}·{1})·{2} ≠ {0}·({1}·{2})",
                self.labels[a], self.labels[b], self.labels[c]
            )));
        }
        self.identity()
            .ok_or_else(|| Error::invalid("table has no identity element"))
    }

    /// Checks the group axioms and returns the identity.
    pub fn check_group(&self) -> Result<usize> {
        let e = self.check_monoid()?;
        for a in 0..self.order() {
            if self.try_inverse(a, e).is_none() {
                return Err(Error::invalid(format!(
                    "element {} has no inverse",
                    self.labels[a]
                )));
            }
        }
        Ok(e)
    }

    fn try_inverse(&self, a: usize, e: usize) -> Option<usize> {
        (0..self.order()).find(|&b| self.mul(a, b) == e && self.mul(b, a) == e)
    }

    /// Inverse map of a group. Panics if the table is not a group; call
    /// [`MultTable::check_group`] first.
    pub fn inverses(&self) -> Vec<usize> {
        let e = self.identity().expect("group has an identity");
        (0..self.order())
            .map(|a| {
                self.try_inverse(a, e)
                    .expect("group element has an inverse")
            })
            .collect()
    }

    pub fn is_group(&self) -> bool {
        self.check_group().is_ok()
    }

    /// Cyclic group `C_n` with elements `e, g, g2, …`.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self { labels, table }
    }

    /// Dihedral group of order `2n` generated by two involutions `s, t` with
    /// `(st)^n = e`. Elements are labelled by their reduced words, the longest
    /// one written starting with `s`; the listing is by length, `s` before `t`.
    pub fn dihedral(n: usize) -> Self {
        let words = dihedral_words(n);
        // r^k s^f, with s = (0, 1) and t = (1, 1)
        let eval = |w: &str| -> (usize, bool) {
            w.chars()
                .filter(|&ch| ch != 'e')
                .fold((0usize, false), |acc, ch| {
                    let g = if ch == 's' { (0, true) } else { (1 % n, true) };
                    dihedral_mul(n, acc, g)
                })
        };
        let elems: Vec<(usize, bool)> = words.iter().map(|w| eval(w)).collect();
        let table = elems
            .iter()
            .map(|&a| {
                elems
                    .iter()
                    .map(|&b| {
                        let p = dihedral_mul(n, a, b);
                        elems.iter().position(|&x| x == p).expect("closed")
                    })
                    .collect()
            })
            .collect();
        Self {
            labels: words,
            table,
        }
    }

    /// Symmetric group on `n` letters, elements in one-line notation.
    pub fn symmetric(n: usize) -> Self {
        let perms = crate::matrix::permutations(n);
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|&x| char::from(b'1' + x as u8)).collect())
            .collect();
        // (p·q)(x) = p(q(x))
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let pq: Vec<usize> = q.iter().map(|&x| p[x]).collect();
                        perms.iter().position(|r| *r == pq).expect("closed")
                    })
                    .collect()
            })
            .collect();
        Self { labels, table }
    }

    /// Direct product; labels are `a×b`.
    pub fn product(&self, other: &Self) -> Self {
        let (n, m) = (self.order(), other.order());
        let labels = (0..n * m)
            .map(|i| format!("{}×{}", self.labels[i / m], other.labels[i % m]))
            .collect();
        let table = (0..n * m)
            .map(|i| {
                (0..n * m)
                    .map(|j| self.mul(i / m, j / m) * m + other.mul(i % m, j % m))
                    .collect()
            })
            .collect();
        Self { labels, table }
    }

    /// Parses names such as `C3`, `D4` (order 8), `S3`, `V4`.
    pub fn named(name: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("unknown group `{name}`"));
        if name == "V4" {
            return Ok(Self::cyclic(2).product(&Self::cyclic(2)));
        }
        let (kind, rest) = name.split_at(1.min(name.len()));
        let n: usize = rest.parse().map_err(|_| bad())?;
        match (kind, n) {
            ("C", 1..=64) => Ok(Self::cyclic(n)),
            ("D", 2..=32) => Ok(Self::dihedral(n)),
            ("S", 1..=5) => Ok(Self::symmetric(n)),
            _ => Err(bad()),
        }
    }

    /// Smallest set containing `gens` and closed under multiplication; in a
    /// finite group this is the generated subgroup (plus the identity).
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        let mut members: Vec<usize> = Vec::new();
        if let Some(e) = self.identity() {
            inside[e] = true;
            members.push(e);
        }
        for &g in gens {
            if !inside[g] {
                inside[g] = true;
                members.push(g);
            }
        }
        let mut frontier = 0;
        while frontier < members.len() {
            let a = members[frontier];
            frontier += 1;
            let mut k = 0;
            while k < members.len() {
                let b = members[k];
                for p in [self.mul(a, b), self.mul(b, a)] {
                    if !inside[p] {
                        inside[p] = true;
                        members.push(p);
                    }
                }
                k += 1;
            }
        }
        members.sort_unstable();
        members
    }
}

fn dihedral_mul(n: usize, (a, f): (usize, bool), (b, g): (usize, bool)) -> (usize, bool) {
    // r^a s^f · r^b s^g = r^{a ± b} s^{f+g}
    let k = if f { (a + n - b % n) % n } else { (a + b) % n };
    (k, f ^ g)
}

/// Reduced words of the dihedral group of order `2n`, by length.
pub fn dihedral_words(n: usize) -> Vec<String> {
    let alternating = |first: char, len: usize| -> String {
        (0..len)
            .map(|i| {
                let s_turn = (i % 2 == 0) == (first == 's');
                if s_turn {
                    's'
                } else {
                    't'
                }
            })
            .collect()
    };
    let mut words = vec!["e".to_string()];
    for len in 1..=n {
        words.push(alternating('s', len));
        if len < n {
            words.push(alternating('t', len));
        }
    }
    words
}

/// Length of a reduced dihedral word as produced by [`dihedral_words`].
pub fn word_length(word: &str) -> usize {
    if word == "e" {
        0
    } else {
        word.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups_are_groups() {
        for g in [
            MultTable::cyclic(1),
            MultTable::cyclic(5),
            MultTable::dihedral(2),
            MultTable::dihedral(4),
            MultTable::symmetric(3),
            MultTable::named("V4").unwrap(),
        ] {
            assert!(g.is_group(), "{:?}", g.labels());
        }
    }

    #[test]
    fn dihedral_b2_words() {
        let d4 = MultTable::dihedral(4);
        assert_eq!(d4.order(), 8);
        assert_eq!(
            d4.labels(),
            ["e", "s", "t", "st", "ts", "sts", "tst", "stst"]
        );
        let idx = |w: &str| d4.index_of(w).unwrap();
        assert_eq!(d4.mul(idx("s"), idx("t")), idx("st"));
        assert_eq!(d4.mul(idx("st"), idx("st")), idx("stst"));
        assert_eq!(d4.mul(idx("t"), idx("sts")), idx("stst"));
        assert_eq!(d4.mul(idx("s"), idx("s")), idx("e"));
    }

    #[test]
    fn non_group_tables_are_rejected() {
        // x·y = x (left zero) on two elements has no identity
        let t = MultTable::new(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![1, 1]]).unwrap();
        assert!(t.check_group().is_err());
        // rock-paper-scissors-style magma is not associative
        let t = MultTable::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![0, 0, 2], vec![0, 1, 1], vec![2, 1, 2]],
        )
        .unwrap();
        assert!(t.find_non_associative().is_some());
    }

    #[test]
    fn closure_generates_subgroups() {
        let s3 = MultTable::symmetric(3);
        let swap = s3.index_of("213").unwrap();
        assert_eq!(s3.closure(&[swap]).len(), 2);
        let cycle = s3.index_of("231").unwrap();
        assert_eq!(s3.closure(&[cycle]).len(), 3);
        assert_eq!(s3.closure(&[swap, cycle]).len(), 6);
    }
}
