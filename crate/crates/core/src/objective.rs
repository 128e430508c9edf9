//! Monotone submodular objectives: graph coverage, exemplar clustering,
//! linear weights and the two-term recommender blend.

use crate::error::{Error, Result};
use crate::set::{ElementId, ElementSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Absolute comparison tolerance for objective values, scaled by magnitude.
pub const VALUE_TOL: f64 = 1e-9;

pub fn approx_ge(a: f64, b: f64) -> bool {
    a >= b - VALUE_TOL * 1f64.max(a.abs()).max(b.abs())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ObjectiveSpec {
    /// `f(S) = |union of neighbors[v] for v in S|` over items `0..items`.
    Coverage {
        items: usize,
        neighbors: Vec<Vec<usize>>,
    },
    /// `f(S) = sum over points p of d(p, 0) - min over e in S + {0} of d(p, e)`
    /// with squared Euclidean `d` and `0` the origin.
    Clustering { points: Vec<Vec<f64>> },
    Linear { weights: Vec<f64> },
    /// `alpha * sum_m' max(max_{m in S} <v_m, v_m'>, 0) + (1 - alpha) * sum_{m in S} <w, v_m>`.
    Recommender {
        items: Vec<Vec<f64>>,
        user: Vec<f64>,
        alpha: f64,
    },
}

impl ObjectiveSpec {
    pub fn universe_size(&self) -> usize {
        match self {
            ObjectiveSpec::Coverage { neighbors, .. } => neighbors.len(),
            ObjectiveSpec::Clustering { points } => points.len(),
            ObjectiveSpec::Linear { weights } => weights.len(),
            ObjectiveSpec::Recommender { items, .. } => items.len(),
        }
    }

    /// Structural checks: ids in range, consistent dimensions, finite numbers.
    pub fn check_structure(&self) -> Result<()> {
        match self {
            ObjectiveSpec::Coverage { items, neighbors } => {
                for (v, list) in neighbors.iter().enumerate() {
                    if let Some(x) = list.iter().find(|&&x| x >= *items) {
                        return Err(Error::malformed(format!(
                            "element {v} covers item {x}, but there are only {items} items"
                        )));
                    }
                }
                Ok(())
            }
            ObjectiveSpec::Clustering { points } => check_vectors(points, None, "point"),
            ObjectiveSpec::Linear { weights } => {
                if weights.iter().any(|w| !w.is_finite()) {
                    return Err(Error::malformed("non-finite linear weight"));
                }
                Ok(())
            }
            ObjectiveSpec::Recommender { items, user, alpha } => {
                check_vectors(items, Some(user.len()), "item vector")?;
                if user.iter().any(|x| !x.is_finite()) {
                    return Err(Error::malformed("non-finite user vector entry"));
                }
                if !(0.0..=1.0).contains(alpha) {
                    return Err(Error::malformed(format!("alpha {alpha} outside [0, 1]")));
                }
                Ok(())
            }
        }
    }

    /// Structure plus the sign conditions that make the objective monotone.
    pub fn validate(&self) -> Result<()> {
        self.check_structure()?;
        match self {
            ObjectiveSpec::Linear { weights } => {
                if let Some((e, w)) = weights.iter().enumerate().find(|(_, &w)| w < 0.0) {
                    return Err(Error::malformed(format!("element {e} has negative weight {w}")));
                }
            }
            ObjectiveSpec::Recommender { items, user, alpha } if *alpha < 1.0 => {
                if let Some(m) = items.iter().position(|v| dot(v, user) < 0.0) {
                    return Err(Error::malformed(format!(
                        "item {m} has a negative user score; shift scores before blending"
                    )));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

fn check_vectors(vs: &[Vec<f64>], dim: Option<usize>, what: &str) -> Result<()> {
    let dim = dim.or_else(|| vs.first().map(Vec::len)).unwrap_or(0);
    for (i, v) in vs.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::malformed(format!(
                "{what} {i} has dimension {}, expected {dim}",
                v.len()
            )));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::malformed(format!("{what} {i} has a non-finite entry")));
        }
    }
    Ok(())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Per-item state that makes marginal gains cheap for the current set.
#[derive(Clone, Debug)]
enum Aux {
    /// How many chosen elements cover each item.
    Coverage(Vec<u32>),
    /// Distance from each point to its closest chosen exemplar (or the origin).
    Clustering(Vec<f64>),
    Linear,
    /// Best clipped similarity of each item to the chosen items.
    Recommender(Vec<f64>),
}

/// Objective oracle with an incremental memo of one "current" set.
///
/// [`Evaluator::evaluate`] and [`Evaluator::marginal`] always work from
/// scratch; [`Evaluator::gain`] and [`Evaluator::insert`] use the memo.
#[derive(Clone, Debug)]
pub struct Evaluator<'a> {
    spec: &'a ObjectiveSpec,
    neighbors: Vec<Vec<usize>>,
    origin_dist: Vec<f64>,
    user_scores: Vec<f64>,
    current: ElementSet,
    aux: Aux,
    value: f64,
}

impl<'a> Evaluator<'a> {
    pub fn new(spec: &'a ObjectiveSpec) -> Result<Self> {
        spec.check_structure()?;
        let neighbors = match spec {
            ObjectiveSpec::Coverage { neighbors, .. } => neighbors
                .iter()
                .map(|l| ElementSet::from_unsorted(l.clone()).into_vec())
                .collect(),
            _ => Vec::new(),
        };
        let origin_dist = match spec {
            ObjectiveSpec::Clustering { points } => {
                points.iter().map(|p| p.iter().map(|x| x * x).sum()).collect()
            }
            _ => Vec::new(),
        };
        let user_scores = match spec {
            ObjectiveSpec::Recommender { items, user, .. } => {
                items.iter().map(|v| dot(v, user)).collect()
            }
            _ => Vec::new(),
        };
        let mut ev = Evaluator {
            spec,
            neighbors,
            origin_dist,
            user_scores,
            current: ElementSet::new(),
            aux: Aux::Linear,
            value: 0.0,
        };
        ev.aux = ev.empty_aux();
        Ok(ev)
    }

    pub fn spec(&self) -> &ObjectiveSpec {
        self.spec
    }

    pub fn universe_size(&self) -> usize {
        self.spec.universe_size()
    }

    fn empty_aux(&self) -> Aux {
        match self.spec {
            ObjectiveSpec::Coverage { items, .. } => Aux::Coverage(vec![0; *items]),
            ObjectiveSpec::Clustering { .. } => Aux::Clustering(self.origin_dist.clone()),
            ObjectiveSpec::Linear { .. } => Aux::Linear,
            ObjectiveSpec::Recommender { items, .. } => Aux::Recommender(vec![0.0; items.len()]),
        }
    }

    fn check_ids(&self, ids: &[ElementId]) -> Result<()> {
        let n = self.universe_size();
        match ids.iter().find(|&&e| e >= n) {
            Some(e) => Err(Error::malformed(format!(
                "element {e} is outside the objective's universe of size {n}"
            ))),
            None => Ok(()),
        }
    }

    /// Gain of adding `e` to `aux`'s set. `e` must not be in that set.
    fn gain_against(&self, aux: &Aux, e: ElementId) -> f64 {
        match (self.spec, aux) {
            (ObjectiveSpec::Coverage { .. }, Aux::Coverage(count)) => {
                self.neighbors[e].iter().filter(|&&x| count[x] == 0).count() as f64
            }
            (ObjectiveSpec::Clustering { points }, Aux::Clustering(best)) => points
                .iter()
                .zip(best)
                .map(|(p, &b)| (b - sq_dist(p, &points[e])).max(0.0))
                .sum(),
            (ObjectiveSpec::Linear { weights }, Aux::Linear) => weights[e],
            (ObjectiveSpec::Recommender { items, alpha, .. }, Aux::Recommender(best)) => {
                let coverage: f64 = items
                    .iter()
                    .zip(best)
                    .map(|(v, &b)| (dot(&items[e], v) - b).max(0.0))
                    .sum();
                alpha * coverage + (1.0 - alpha) * self.user_scores[e]
            }
            _ => unreachable!("aux state built for another objective"),
        }
    }

    fn absorb(&self, aux: &mut Aux, e: ElementId) {
        match (self.spec, aux) {
            (ObjectiveSpec::Coverage { .. }, Aux::Coverage(count)) => {
                for &x in &self.neighbors[e] {
                    count[x] += 1;
                }
            }
            (ObjectiveSpec::Clustering { points }, Aux::Clustering(best)) => {
                for (p, b) in points.iter().zip(best.iter_mut()) {
                    *b = b.min(sq_dist(p, &points[e]));
                }
            }
            (ObjectiveSpec::Linear { .. }, Aux::Linear) => {}
            (ObjectiveSpec::Recommender { items, .. }, Aux::Recommender(best)) => {
                for (v, b) in items.iter().zip(best.iter_mut()) {
                    *b = b.max(dot(&items[e], v));
                }
            }
            _ => unreachable!("aux state built for another objective"),
        }
    }

    fn value_of(&self, aux: &Aux, s: &[ElementId]) -> f64 {
        match (self.spec, aux) {
            (ObjectiveSpec::Coverage { .. }, Aux::Coverage(count)) => {
                count.iter().filter(|&&c| c > 0).count() as f64
            }
            (ObjectiveSpec::Clustering { .. }, Aux::Clustering(best)) => {
                self.origin_dist.iter().zip(best).map(|(d0, b)| d0 - b).sum()
            }
            (ObjectiveSpec::Linear { weights }, Aux::Linear) => s.iter().map(|&e| weights[e]).sum(),
            (ObjectiveSpec::Recommender { alpha, .. }, Aux::Recommender(best)) => {
                let coverage: f64 = best.iter().sum();
                let personal: f64 = s.iter().map(|&e| self.user_scores[e]).sum();
                alpha * coverage + (1.0 - alpha) * personal
            }
            _ => unreachable!("aux state built for another objective"),
        }
    }

    fn fresh_aux(&self, s: &[ElementId]) -> Aux {
        let mut aux = self.empty_aux();
        for &e in s {
            self.absorb(&mut aux, e);
        }
        aux
    }

    /// `f(s)` computed from scratch.
    pub fn evaluate(&self, s: &ElementSet) -> Result<f64> {
        self.check_ids(s)?;
        Ok(self.value_unchecked(s))
    }

    pub(crate) fn value_unchecked(&self, s: &[ElementId]) -> f64 {
        if s.is_empty() {
            return 0.0;
        }
        let aux = self.fresh_aux(s);
        self.value_of(&aux, s)
    }

    /// `f(s + e) - f(s)`.
    pub fn marginal(&self, s: &ElementSet, e: ElementId) -> Result<f64> {
        self.check_ids(s)?;
        self.check_ids(&[e])?;
        if s.contains(e) {
            return Err(Error::precondition(format!("{e} is already in the set")));
        }
        Ok(self.gain_against(&self.fresh_aux(s), e))
    }

    /// Replaces the memoized current set.
    pub fn reset(&mut self, s: &ElementSet) {
        self.aux = self.fresh_aux(s);
        self.value = self.value_of(&self.aux, s);
        self.current = s.clone();
    }

    pub fn current(&self) -> &ElementSet {
        &self.current
    }

    /// `f` of the memoized current set.
    pub fn value(&self) -> f64 {
        self.value
    }

    /// Marginal gain of `e` with respect to the memoized current set.
    pub fn gain(&self, e: ElementId) -> f64 {
        debug_assert!(!self.current.contains(e));
        self.gain_against(&self.aux, e)
    }

    /// Adds `e` to the memoized current set.
    pub fn insert(&mut self, e: ElementId) {
        if self.current.contains(e) {
            return;
        }
        self.value += self.gain_against(&self.aux, e);
        let mut aux = std::mem::replace(&mut self.aux, Aux::Linear);
        self.absorb(&mut aux, e);
        self.aux = aux;
        self.current.insert(e);
    }
}

/// Universe size up to which [`check_monotone_submodular`] is exhaustive.
pub const EXHAUSTIVE_OBJECTIVE_LIMIT: usize = 14;
const SAMPLED_TRIPLES: usize = 10_000;

/// Checks monotonicity and diminishing returns.
///
/// Up to [`EXHAUSTIVE_OBJECTIVE_LIMIT`] elements the check is exhaustive,
/// using the equivalent local form `f(S+a) + f(S+b) >= f(S+a+b) + f(S)`.
/// Larger universes are tested on sampled triples `Y ⊆ X, e ∉ X`.
pub fn check_monotone_submodular(spec: &ObjectiveSpec, universe_size: usize) -> Result<bool> {
    let ev = Evaluator::new(spec)?;
    if universe_size > spec.universe_size() {
        return Err(Error::malformed(format!(
            "check over {universe_size} elements, objective has {}",
            spec.universe_size()
        )));
    }
    let n = universe_size;
    if n <= EXHAUSTIVE_OBJECTIVE_LIMIT {
        let values: Vec<f64> = (0u32..1 << n)
            .map(|m| ev.value_unchecked(&ElementSet::from_mask(m)))
            .collect();
        for s in 0usize..1 << n {
            for a in (0..n).filter(|&a| s & (1 << a) == 0) {
                let sa = s | (1 << a);
                if !approx_ge(values[sa], values[s]) {
                    return Ok(false);
                }
                for b in (a + 1..n).filter(|&b| s & (1 << b) == 0) {
                    let sb = s | (1 << b);
                    if !approx_ge(values[sa] + values[sb], values[sa | sb] + values[s]) {
                        return Ok(false);
                    }
                }
            }
        }
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_5b0d);
    for _ in 0..SAMPLED_TRIPLES {
        let e = rng.gen_range(0..n);
        let x: ElementSet = (0..n).filter(|&v| v != e && rng.gen_bool(0.5)).collect();
        let y: ElementSet = x.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let (fx, fy) = (ev.value_unchecked(&x), ev.value_unchecked(&y));
        let fxe = ev.value_unchecked(&x.with(e));
        let fye = ev.value_unchecked(&y.with(e));
        if !approx_ge(fx, fy) || !approx_ge(fxe, fx) || !approx_ge(fye - fy, fxe - fx) {
            return Ok(false);
        }
    }
    Ok(true)
}
