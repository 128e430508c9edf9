//! Sorted, duplicate-free sets of ground-set elements.
//!
//! Every iteration over an [`ElementSet`] visits ids in ascending order, and
//! all tie-breaking in the crate relies on that order.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Deref;

/// Dense index into the ground set `0..n`.
pub type ElementId = usize;

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<ElementId>", into = "Vec<ElementId>")]
pub struct ElementSet(Vec<ElementId>);

impl ElementSet {
    pub fn new() -> Self {
        ElementSet(Vec::new())
    }

    /// Builds a set from arbitrary ids, sorting and dropping duplicates.
    pub fn from_unsorted(mut ids: Vec<ElementId>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        ElementSet(ids)
    }

    pub fn as_slice(&self) -> &[ElementId] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<ElementId> {
        self.0
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    /// Returns `true` if `e` was not already present.
    pub fn insert(&mut self, e: ElementId) -> bool {
        match self.0.binary_search(&e) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, e);
                true
            }
        }
    }

    pub fn remove(&mut self, e: ElementId) -> bool {
        match self.0.binary_search(&e) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn with(&self, e: ElementId) -> Self {
        let mut s = self.clone();
        s.insert(e);
        s
    }

    pub fn without(&self, e: ElementId) -> Self {
        let mut s = self.clone();
        s.remove(e);
        s
    }

    pub fn union(&self, other: &ElementSet) -> Self {
        merge(&self.0, &other.0, |a, b| a || b)
    }

    pub fn intersection(&self, other: &ElementSet) -> Self {
        merge(&self.0, &other.0, |a, b| a && b)
    }

    pub fn minus(&self, other: &ElementSet) -> Self {
        merge(&self.0, &other.0, |a, b| a && !b)
    }

    pub fn symmetric_difference(&self, other: &ElementSet) -> Self {
        merge(&self.0, &other.0, |a, b| a != b)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.minus(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.intersection(other).is_empty()
    }

    /// Largest id plus one, or zero for the empty set.
    pub fn bound(&self) -> usize {
        self.0.last().map_or(0, |&e| e + 1)
    }

    /// Bitmask encoding for universes of at most 32 elements.
    pub fn to_mask(&self) -> u32 {
        self.0.iter().fold(0u32, |m, &e| m | (1 << e))
    }

    pub fn from_mask(mask: u32) -> Self {
        ElementSet((0..32).filter(|&e| mask & (1 << e) != 0).collect())
    }
}

fn merge(a: &[ElementId], b: &[ElementId], keep: impl Fn(bool, bool) -> bool) -> ElementSet {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (e, in_a, in_b) = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => (x, true, true),
            (Some(&x), Some(&y)) if x < y => (x, true, false),
            (Some(_), Some(&y)) => (y, false, true),
            (Some(&x), None) => (x, true, false),
            (None, Some(&y)) => (y, false, true),
            (None, None) => unreachable!(),
        };
        if in_a {
            i += 1;
        }
        if in_b {
            j += 1;
        }
        if keep(in_a, in_b) {
            out.push(e);
        }
    }
    ElementSet(out)
}

impl Deref for ElementSet {
    type Target = [ElementId];

    fn deref(&self) -> &[ElementId] {
        &self.0
    }
}

impl From<Vec<ElementId>> for ElementSet {
    fn from(v: Vec<ElementId>) -> Self {
        ElementSet::from_unsorted(v)
    }
}

impl From<ElementSet> for Vec<ElementId> {
    fn from(s: ElementSet) -> Self {
        s.0
    }
}

impl<const N: usize> From<[ElementId; N]> for ElementSet {
    fn from(a: [ElementId; N]) -> Self {
        ElementSet::from_unsorted(a.to_vec())
    }
}

impl FromIterator<ElementId> for ElementSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        ElementSet::from_unsorted(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = &'a ElementId;
    type IntoIter = std::slice::Iter<'a, ElementId>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}
