use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::matroid::MatroidSpec;
use crate::objective::Evaluator;
use crate::set::{ElementId, ElementSet};

/// Heap entry: an upper bound on an element's gain and the set size at
/// which it was computed. Larger gains first, then smaller ids.
struct Candidate {
    gain: f64,
    id: ElementId,
    stamp: usize,
}

impl Candidate {
    fn key(&self) -> (OrdF64, Reverse<ElementId>) {
        (OrdF64(self.gain), Reverse(self.id))
    }
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

#[derive(PartialEq)]
struct OrdF64(f64);

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Greedy over the common independent sets of `m1` and `m2`: repeatedly adds
/// the feasible element of largest marginal gain (ties to the smallest id)
/// until no element can be added. Gains are re-evaluated lazily.
pub fn greedy_intersection(
    ev: &mut Evaluator,
    m1: &MatroidSpec,
    m2: &MatroidSpec,
) -> Result<ElementSet> {
    greedy_extend(ev, m1, m2, &ElementSet::new())
}

/// Greedy continued from `base`, which is never shrunk.
pub fn greedy_extend(
    ev: &mut Evaluator,
    m1: &MatroidSpec,
    m2: &MatroidSpec,
    base: &ElementSet,
) -> Result<ElementSet> {
    let n = m1.universe_size();
    if m2.universe_size() != n || ev.universe_size() != n {
        return Err(Error::malformed(format!(
            "universe sizes disagree: {n}, {}, objective {}",
            m2.universe_size(),
            ev.universe_size()
        )));
    }
    for m in [m1, m2] {
        if !m.is_independent(base)? {
            return Err(Error::precondition("greedy extension from a dependent base"));
        }
    }
    ev.reset(base);
    let (mut o1, mut o2) = (m1.local(base), m2.local(base));
    let mut heap: BinaryHeap<Candidate> = (0..n)
        .filter(|&e| !base.contains(e))
        .map(|id| Candidate {
            gain: ev.gain(id),
            id,
            stamp: base.len(),
        })
        .collect();
    while let Some(top) = heap.pop() {
        // Once an element cannot be added it never can again.
        if !o1.can_add(top.id) || !o2.can_add(top.id) {
            continue;
        }
        let size = ev.current().len();
        if top.stamp == size {
            ev.insert(top.id);
            o1.push(top.id);
            o2.push(top.id);
        } else {
            heap.push(Candidate {
                gain: ev.gain(top.id),
                id: top.id,
                stamp: size,
            });
        }
    }
    Ok(ev.current().clone())
}
