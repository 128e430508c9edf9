//! Exchange graphs between two independent sets and the augmenting and
//! alternating path systems built on them.

mod matching;
mod partition;
mod paths;

pub use matching::{bipartite_max_matching, Direction, Matching};
pub use partition::fast_paths_partition;
pub use paths::{generate_paths, generate_paths_two_matroids};

use crate::error::{Error, Result};
use crate::fairness::{Color, FairnessSpec};
use crate::matroid::MatroidSpec;
use crate::set::{ElementId, ElementSet};

/// Bipartite graph between `Y \ P` (left) and `P \ Y` (right).
///
/// A right-to-left edge `p -> y` means `Y - y + p` is independent in the
/// first matroid; a left-to-right edge `y -> p` means the same in the second.
#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub left: Vec<ElementId>,
    pub right: Vec<ElementId>,
    right_to_left: Vec<bool>,
    left_to_right: Vec<bool>,
}

impl ExchangeGraph {
    /// Edge `right[r] -> left[l]`.
    pub fn has_right_to_left(&self, r: usize, l: usize) -> bool {
        self.right_to_left[r * self.left.len() + l]
    }

    /// Edge `left[l] -> right[r]`.
    pub fn has_left_to_right(&self, l: usize, r: usize) -> bool {
        self.left_to_right[l * self.right.len() + r]
    }

    pub fn edges_right_to_left(&self) -> Vec<Vec<usize>> {
        (0..self.right.len())
            .map(|r| (0..self.left.len()).filter(|&l| self.has_right_to_left(r, l)).collect())
            .collect()
    }

    pub fn edges_left_to_right(&self) -> Vec<Vec<usize>> {
        (0..self.left.len())
            .map(|l| (0..self.right.len()).filter(|&r| self.has_left_to_right(l, r)).collect())
            .collect()
    }
}

pub(crate) fn require_common_independent(
    ms: &[&MatroidSpec],
    s: &ElementSet,
    what: &str,
) -> Result<()> {
    for m in ms {
        if !m.is_independent(s)? {
            return Err(Error::precondition(format!("{what} {s:?} is not independent")));
        }
    }
    Ok(())
}

/// Builds the exchange graph of `y` and `p` with respect to `m1`
/// (right-to-left edges) and `m2` (left-to-right edges). Edges are judged
/// against the whole of `y`; only the residuals `y \ p` and `p \ y` become
/// vertices.
pub fn build_exchange_graph(
    m1: &MatroidSpec,
    m2: &MatroidSpec,
    y: &ElementSet,
    p: &ElementSet,
) -> Result<ExchangeGraph> {
    require_common_independent(&[m1, m2], y, "exchange base")?;
    m1.is_independent(p)?;
    Ok(exchange_graph_unchecked(m1, m2, y, p))
}

pub(crate) fn exchange_graph_unchecked(
    m1: &MatroidSpec,
    m2: &MatroidSpec,
    y: &ElementSet,
    p: &ElementSet,
) -> ExchangeGraph {
    let left = y.minus(p).into_vec();
    let right = p.minus(y).into_vec();
    let (o1, o2) = (m1.local(y), m2.local(y));
    let mut right_to_left = vec![false; left.len() * right.len()];
    let mut left_to_right = vec![false; left.len() * right.len()];
    for (r, &pe) in right.iter().enumerate() {
        for (l, &ye) in left.iter().enumerate() {
            right_to_left[r * left.len() + l] = o1.can_swap(ye, pe);
            left_to_right[l * right.len() + r] = o2.can_swap(ye, pe);
        }
    }
    ExchangeGraph {
        left,
        right,
        right_to_left,
        left_to_right,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathKind {
    /// Ends in `P`; applying it grows `Y` by one element.
    Augmenting,
    /// Ends in `Y`; applying it keeps `|Y|`.
    Alternating,
}

/// A vertex-disjoint path `(p1, y1, p2, y2, ...)` starting in `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeSet {
    pub vertices: Vec<ElementId>,
    pub kind: PathKind,
    /// Color (or second-matroid part) gaining an element, when colors apply.
    pub increased: Option<Color>,
    /// Color losing an element; alternating paths only.
    pub decreased: Option<Color>,
}

impl ExchangeSet {
    pub fn elements(&self) -> ElementSet {
        ElementSet::from_unsorted(self.vertices.clone())
    }

    pub fn is_augmenting(&self) -> bool {
        self.kind == PathKind::Augmenting
    }
}

/// `Y △ X`.
pub fn apply_exchange(y: &ElementSet, x: &ExchangeSet) -> ElementSet {
    y.symmetric_difference(&x.elements())
}

/// Verifies that `x` is an augmenting or alternating set for `y` relative to
/// `p`: `Y △ X` is independent and the color counts move by exactly `+1` on
/// an undersaturated color and `-1` on an oversaturated one (alternating only).
pub fn check_exchange(
    m: &MatroidSpec,
    spec: &FairnessSpec,
    y: &ElementSet,
    p: &ElementSet,
    x: &ExchangeSet,
) -> Result<()> {
    let fail = |what: &str| Err(Error::invariant(format!("exchange {:?}: {what}", x.vertices)));
    let next = apply_exchange(y, x);
    if !m.independent(&next) {
        return fail("result is not independent");
    }
    if !spec.is_upper_fair(&next) {
        return fail("result is not upper-fair");
    }
    let (before, after, target) = (spec.counts(y), spec.counts(&next), spec.counts(p));
    let Some(up) = x.increased else {
        return fail("no increased color");
    };
    if before.0[up] >= target.0[up] {
        return fail("increased color was not undersaturated");
    }
    let down = match (x.kind, x.decreased) {
        (PathKind::Augmenting, None) if next.len() == y.len() + 1 => None,
        (PathKind::Alternating, Some(c)) if next.len() == y.len() => {
            if before.0[c] <= target.0[c] {
                return fail("decreased color was not oversaturated");
            }
            Some(c)
        }
        _ => return fail("kind does not match the size change"),
    };
    for c in 0..spec.num_colors() {
        let expected = before.0[c] as i64 + i64::from(c == up) - i64::from(Some(c) == down);
        if after.0[c] as i64 != expected {
            return fail("color counts move outside the allowed pattern");
        }
    }
    Ok(())
}
