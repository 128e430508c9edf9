//! Matroid oracles over a dense ground set `0..n`.
//!
//! Three families are supported: partition matroids, uniform matroids and
//! explicitly listed families (test scale, `n <= 20`). Algorithms that need
//! many exchange queries against one fixed set go through [`LocalOracle`],
//! which answers `Y + x` and `Y - y + x` queries in constant time for the
//! partition and uniform families.

use crate::error::{Error, Result};
use crate::set::{ElementId, ElementSet};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Largest universe accepted by the exhaustive routines and by explicit matroids.
pub const EXHAUSTIVE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatroidSpec {
    /// Element `e` lies in group `groups[e]`; a set is independent when it
    /// holds at most `caps[g]` elements of every group `g`.
    Partition { groups: Vec<usize>, caps: Vec<usize> },
    /// All sets of at most `rank` elements out of `n`.
    Uniform { n: usize, rank: usize },
    Explicit(ExplicitMatroid),
}

/// A matroid given by the list of all of its independent sets.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "ExplicitRepr", into = "ExplicitRepr")]
pub struct ExplicitMatroid {
    n: usize,
    sets: Vec<ElementSet>,
    masks: HashSet<u32>,
}

#[derive(Serialize, Deserialize)]
struct ExplicitRepr {
    n: usize,
    independent: Vec<ElementSet>,
}

impl ExplicitMatroid {
    pub fn new(n: usize, sets: Vec<ElementSet>) -> Result<Self> {
        if n > EXHAUSTIVE_LIMIT {
            return Err(Error::TooLarge {
                what: "explicit matroid",
                size: n,
                limit: EXHAUSTIVE_LIMIT,
            });
        }
        if let Some(s) = sets.iter().find(|s| s.bound() > n) {
            return Err(Error::malformed(format!(
                "independent set {s:?} leaves the universe of size {n}"
            )));
        }
        let masks: HashSet<u32> = sets.iter().map(ElementSet::to_mask).collect();
        if !masks.contains(&0) {
            return Err(Error::malformed("explicit family must contain the empty set"));
        }
        Ok(ExplicitMatroid { n, sets, masks })
    }

    /// Enumerates every subset of `0..n` accepted by `pred`.
    pub fn from_predicate(n: usize, pred: impl Fn(&ElementSet) -> bool) -> Result<Self> {
        if n > EXHAUSTIVE_LIMIT {
            return Err(Error::TooLarge {
                what: "explicit matroid",
                size: n,
                limit: EXHAUSTIVE_LIMIT,
            });
        }
        let sets = (0u32..1 << n)
            .map(ElementSet::from_mask)
            .filter(|s| pred(s))
            .collect();
        ExplicitMatroid::new(n, sets)
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    fn contains_mask(&self, mask: u32) -> bool {
        self.masks.contains(&mask)
    }
}

impl PartialEq for ExplicitMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.sets == other.sets
    }
}

impl TryFrom<ExplicitRepr> for ExplicitMatroid {
    type Error = Error;

    fn try_from(r: ExplicitRepr) -> Result<Self> {
        ExplicitMatroid::new(r.n, r.independent)
    }
}

impl From<ExplicitMatroid> for ExplicitRepr {
    fn from(m: ExplicitMatroid) -> Self {
        ExplicitRepr {
            n: m.n,
            independent: m.sets,
        }
    }
}

impl MatroidSpec {
    pub fn partition(groups: Vec<usize>, caps: Vec<usize>) -> Result<Self> {
        let m = MatroidSpec::Partition { groups, caps };
        m.validate()?;
        Ok(m)
    }

    pub fn uniform(n: usize, rank: usize) -> Self {
        MatroidSpec::Uniform { n, rank }
    }

    /// Every subset of `0..n` is independent.
    pub fn free(n: usize) -> Self {
        MatroidSpec::Uniform { n, rank: n }
    }

    pub fn universe_size(&self) -> usize {
        match self {
            MatroidSpec::Partition { groups, .. } => groups.len(),
            MatroidSpec::Uniform { n, .. } => *n,
            MatroidSpec::Explicit(m) => m.n,
        }
    }

    pub fn is_partition(&self) -> bool {
        matches!(self, MatroidSpec::Partition { .. })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MatroidSpec::Partition { groups, caps } => {
                if let Some((e, &g)) = groups.iter().enumerate().find(|(_, &g)| g >= caps.len()) {
                    return Err(Error::malformed(format!(
                        "element {e} is assigned to group {g}, but only {} caps are given",
                        caps.len()
                    )));
                }
                Ok(())
            }
            MatroidSpec::Uniform { .. } => Ok(()),
            MatroidSpec::Explicit(m) => {
                ExplicitMatroid::new(m.n, m.sets.clone()).map(|_| ())
            }
        }
    }

    fn check_range(&self, ids: &[ElementId]) -> Result<()> {
        let n = self.universe_size();
        match ids.iter().find(|&&e| e >= n) {
            Some(e) => Err(Error::malformed(format!(
                "element {e} is outside the universe of size {n}"
            ))),
            None => Ok(()),
        }
    }

    /// Membership test for ids already known to lie in the universe.
    pub fn independent(&self, s: &[ElementId]) -> bool {
        match self {
            MatroidSpec::Partition { groups, caps } => {
                let mut counts = vec![0usize; caps.len()];
                s.iter().all(|&e| {
                    let g = groups[e];
                    counts[g] += 1;
                    counts[g] <= caps[g]
                })
            }
            MatroidSpec::Uniform { rank, .. } => s.len() <= *rank,
            MatroidSpec::Explicit(m) => {
                m.contains_mask(s.iter().fold(0u32, |acc, &e| acc | (1 << e)))
            }
        }
    }

    pub fn is_independent(&self, s: &ElementSet) -> Result<bool> {
        self.check_range(s)?;
        Ok(self.independent(s))
    }

    /// Whether `y_set - y + p` is independent.
    pub fn can_exchange(&self, y_set: &ElementSet, y: ElementId, p: ElementId) -> Result<bool> {
        self.check_range(y_set)?;
        self.check_range(&[y, p])?;
        if !y_set.contains(y) {
            return Err(Error::precondition(format!("{y} is not in the exchanged set")));
        }
        if y_set.contains(p) {
            return Err(Error::precondition(format!("{p} is already in the exchanged set")));
        }
        Ok(self.local(y_set).can_swap(y, p))
    }

    /// Prepares constant-time exchange queries against `base`.
    pub fn local(&self, base: &[ElementId]) -> LocalOracle<'_> {
        let state = match self {
            MatroidSpec::Partition { groups, caps } => {
                let mut counts = vec![0usize; caps.len()];
                for &e in base {
                    counts[groups[e]] += 1;
                }
                let over = counts.iter().zip(caps).filter(|(c, k)| c > k).count();
                LocalState::Partition { counts, over }
            }
            MatroidSpec::Uniform { .. } => LocalState::Uniform { len: base.len() },
            MatroidSpec::Explicit(_) => LocalState::Explicit {
                mask: base.iter().fold(0u32, |acc, &e| acc | (1 << e)),
            },
        };
        LocalOracle {
            matroid: self,
            state,
        }
    }

    /// Exhaustively checks the matroid axioms on `0..universe_size`.
    pub fn check_axioms(&self, universe_size: usize) -> Result<bool> {
        if universe_size > EXHAUSTIVE_LIMIT {
            return Err(Error::TooLarge {
                what: "axiom check",
                size: universe_size,
                limit: EXHAUSTIVE_LIMIT,
            });
        }
        if universe_size > self.universe_size() {
            return Err(Error::malformed(format!(
                "axiom check over {universe_size} elements, matroid has {}",
                self.universe_size()
            )));
        }
        let n = universe_size;
        let full = (1usize << n) - 1;
        let indep: Vec<bool> = (0..=full)
            .map(|mask| self.independent(&ElementSet::from_mask(mask as u32)))
            .collect();
        if !indep[0] {
            return Ok(false);
        }
        // Downward closure, and the rank of every subset as the size of its
        // largest independent subset.
        let mut rank = vec![0u32; full + 1];
        for mask in 1..=full {
            if indep[mask] {
                let closed = (0..n)
                    .filter(|&e| mask & (1 << e) != 0)
                    .all(|e| indep[mask ^ (1 << e)]);
                if !closed {
                    return Ok(false);
                }
                rank[mask] = mask.count_ones();
            } else {
                rank[mask] = (0..n)
                    .filter(|&e| mask & (1 << e) != 0)
                    .map(|e| rank[mask ^ (1 << e)])
                    .max()
                    .unwrap_or(0);
            }
        }
        // Augmentation for |Y| = |X| + 1 suffices once downward closure
        // holds. It fails at X exactly when the elements that cannot extend
        // X, together with X, still contain an independent set larger than X.
        for x in (0..=full).filter(|&m| indep[m]) {
            let blocked = (0..n)
                .filter(|&e| x & (1 << e) == 0 && !indep[x | (1 << e)])
                .fold(0usize, |acc, e| acc | (1 << e));
            if rank[x | blocked] > x.count_ones() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Extends `base` by scanning `candidates` in order, keeping each element
    /// whose addition preserves independence.
    pub fn greedy_max_independent(
        &self,
        candidates: &[ElementId],
        base: &ElementSet,
    ) -> Result<ElementSet> {
        self.check_range(candidates)?;
        if !self.is_independent(base)? {
            return Err(Error::precondition("greedy extension from a dependent base"));
        }
        let mut out = base.clone();
        let mut oracle = self.local(base);
        for &e in candidates {
            if !out.contains(e) && oracle.can_add(e) {
                out.insert(e);
                oracle.push(e);
            }
        }
        Ok(out)
    }
}

/// Exchange queries against one fixed set `Y`, answered without rescanning `Y`.
pub struct LocalOracle<'a> {
    matroid: &'a MatroidSpec,
    state: LocalState,
}

enum LocalState {
    Partition { counts: Vec<usize>, over: usize },
    Uniform { len: usize },
    Explicit { mask: u32 },
}

impl LocalOracle<'_> {
    /// Whether `Y + x` is independent, for `x` not in `Y`.
    pub fn can_add(&self, x: ElementId) -> bool {
        match (&self.state, self.matroid) {
            (LocalState::Partition { counts, over }, MatroidSpec::Partition { groups, caps }) => {
                *over == 0 && counts[groups[x]] < caps[groups[x]]
            }
            (LocalState::Uniform { len }, MatroidSpec::Uniform { rank, .. }) => *len < *rank,
            (LocalState::Explicit { mask }, MatroidSpec::Explicit(m)) => {
                m.contains_mask(mask | (1 << x))
            }
            _ => unreachable!("local state built for another matroid"),
        }
    }

    /// Whether `Y - y + x` is independent, for `y` in `Y` and `x` not in `Y`.
    pub fn can_swap(&self, y: ElementId, x: ElementId) -> bool {
        match (&self.state, self.matroid) {
            (LocalState::Partition { counts, over }, MatroidSpec::Partition { groups, caps }) => {
                let (gy, gx) = (groups[y], groups[x]);
                if gx == gy {
                    return *over == 0;
                }
                let mut over = *over;
                if counts[gy] > caps[gy] && counts[gy] - 1 <= caps[gy] {
                    over -= 1;
                }
                if counts[gx] <= caps[gx] && counts[gx] + 1 > caps[gx] {
                    over += 1;
                }
                over == 0
            }
            (LocalState::Uniform { len }, MatroidSpec::Uniform { rank, .. }) => *len <= *rank,
            (LocalState::Explicit { mask }, MatroidSpec::Explicit(m)) => {
                m.contains_mask((mask & !(1 << y)) | (1 << x))
            }
            _ => unreachable!("local state built for another matroid"),
        }
    }

    /// Records that `x` joined `Y`.
    pub fn push(&mut self, x: ElementId) {
        match (&mut self.state, self.matroid) {
            (LocalState::Partition { counts, over }, MatroidSpec::Partition { groups, caps }) => {
                let g = groups[x];
                counts[g] += 1;
                if counts[g] == caps[g] + 1 {
                    *over += 1;
                }
            }
            (LocalState::Uniform { len }, _) => *len += 1,
            (LocalState::Explicit { mask }, _) => *mask |= 1 << x,
            _ => unreachable!("local state built for another matroid"),
        }
    }
}
