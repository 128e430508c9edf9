//! Colors, fairness bounds and the bookkeeping built on them.

use crate::error::{Error, Result};
use crate::matroid::MatroidSpec;
use crate::set::ElementId;
use serde::{Deserialize, Serialize};

pub type Color = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FairnessSpec {
    pub colors: Vec<Color>,
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

/// Per-color element counts of one set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorCounts(pub Vec<usize>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Saturation {
    Under,
    Over,
    Exact,
}

impl FairnessSpec {
    pub fn new(colors: Vec<Color>, lower: Vec<usize>, upper: Vec<usize>) -> Result<Self> {
        let spec = FairnessSpec { colors, lower, upper };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let c = self.lower.len();
        if self.upper.len() != c {
            return Err(Error::malformed(format!(
                "{} lower bounds but {} upper bounds",
                c,
                self.upper.len()
            )));
        }
        if let Some((e, &col)) = self.colors.iter().enumerate().find(|(_, &col)| col >= c) {
            return Err(Error::malformed(format!(
                "element {e} has color {col}, but only {c} colors have bounds"
            )));
        }
        if let Some(col) = (0..c).find(|&col| self.lower[col] > self.upper[col]) {
            return Err(Error::malformed(format!(
                "color {col}: lower bound {} exceeds upper bound {}",
                self.lower[col], self.upper[col]
            )));
        }
        let sizes = self.color_sizes();
        if let Some(col) = (0..c).find(|&col| sizes[col] == 0 && self.lower[col] > 0) {
            return Err(Error::malformed(format!(
                "color {col} has no elements but lower bound {}",
                self.lower[col]
            )));
        }
        Ok(())
    }

    pub fn num_colors(&self) -> usize {
        self.lower.len()
    }

    pub fn universe_size(&self) -> usize {
        self.colors.len()
    }

    pub fn color_of(&self, e: ElementId) -> Color {
        self.colors[e]
    }

    /// `|V_c|` for every color.
    pub fn color_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_colors()];
        for &c in &self.colors {
            sizes[c] += 1;
        }
        sizes
    }

    pub fn lower_total(&self) -> usize {
        self.lower.iter().sum()
    }

    pub fn counts(&self, s: &[ElementId]) -> ColorCounts {
        let mut counts = vec![0; self.num_colors()];
        for &e in s {
            counts[self.colors[e]] += 1;
        }
        ColorCounts(counts)
    }

    /// The partition matroid of upper-fair sets.
    pub fn upper_matroid(&self) -> MatroidSpec {
        MatroidSpec::Partition {
            groups: self.colors.clone(),
            caps: self.upper.clone(),
        }
    }

    /// The partition matroid capping every color at its lower bound.
    pub fn lower_matroid(&self) -> MatroidSpec {
        MatroidSpec::Partition {
            groups: self.colors.clone(),
            caps: self.lower.clone(),
        }
    }

    /// Total fairness violation.
    pub fn fav(&self, s: &[ElementId]) -> usize {
        let counts = self.counts(s);
        counts
            .0
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&n, (&l, &u))| n.saturating_sub(u).max(l.saturating_sub(n)))
            .sum()
    }

    /// Violation of the lower bounds alone; equals [`fav`](Self::fav) on upper-fair sets.
    pub fn lower_shortfall(&self, s: &[ElementId]) -> usize {
        let counts = self.counts(s);
        counts.0.iter().zip(&self.lower).map(|(&n, &l)| l.saturating_sub(n)).sum()
    }

    pub fn is_upper_fair(&self, s: &[ElementId]) -> bool {
        let counts = self.counts(s);
        counts.0.iter().zip(&self.upper).all(|(n, u)| n <= u)
    }

    pub fn is_fair(&self, s: &[ElementId]) -> bool {
        self.fav(s) == 0
    }

    /// Saturation of every color of `y` relative to the reference set `p`.
    pub fn classify_saturation(&self, y: &[ElementId], p: &[ElementId]) -> Vec<Saturation> {
        let (cy, cp) = (self.counts(y), self.counts(p));
        cy.0.iter()
            .zip(&cp.0)
            .map(|(a, b)| match a.cmp(b) {
                std::cmp::Ordering::Less => Saturation::Under,
                std::cmp::Ordering::Greater => Saturation::Over,
                std::cmp::Ordering::Equal => Saturation::Exact,
            })
            .collect()
    }

    /// `sum over colors of max(0, |P ∩ V_c| - |Y ∩ V_c|)`.
    pub fn deficiency_k(&self, y: &[ElementId], p: &[ElementId]) -> usize {
        let (cy, cp) = (self.counts(y), self.counts(p));
        cy.0.iter().zip(&cp.0).map(|(a, b)| b.saturating_sub(*a)).sum()
    }
}
