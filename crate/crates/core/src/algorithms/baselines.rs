use std::time::Instant;

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ensure_feasible, fair_skeleton, greedy_extend, greedy_intersection, RunRecord};
use crate::error::{Error, Result};
use crate::fairness::FairnessSpec;
use crate::matroid::MatroidSpec;
use crate::objective::Evaluator;
use crate::set::ElementSet;

fn skeleton(m: &MatroidSpec, spec: &FairnessSpec) -> Result<ElementSet> {
    fair_skeleton(m, spec)?.map_err(|reached| {
        Error::Infeasible(format!(
            "only {reached} of the {} lower-bound slots can be filled by an independent set",
            spec.lower_total()
        ))
    })
}

fn finish(
    ev: &Evaluator,
    m: &MatroidSpec,
    spec: &FairnessSpec,
    s: ElementSet,
    seed: u64,
    started: Instant,
) -> Result<RunRecord> {
    ensure_feasible(m, spec, &s)?;
    Ok(RunRecord::new(ev, Some(spec), s, seed, started))
}

/// Lower bounds first (ignoring `f`), then greedy up to a maximal set.
pub fn baseline_lbmi(ev: &mut Evaluator, m: &MatroidSpec, spec: &FairnessSpec) -> Result<RunRecord> {
    let started = Instant::now();
    let base = skeleton(m, spec)?;
    let s = greedy_extend(ev, m, &spec.upper_matroid(), &base)?;
    finish(ev, m, spec, s, 0, started)
}

/// Greedy on `I` and the upper bounds, ignoring lower bounds.
pub fn baseline_ubmi(ev: &mut Evaluator, m: &MatroidSpec, spec: &FairnessSpec) -> Result<RunRecord> {
    let started = Instant::now();
    let s = greedy_intersection(ev, m, &spec.upper_matroid())?;
    finish(ev, m, spec, s, 0, started)
}

/// One pass over a uniformly shuffled universe, keeping each element that
/// leaves the set independent and upper-fair.
pub fn baseline_random(
    ev: &mut Evaluator,
    m: &MatroidSpec,
    spec: &FairnessSpec,
    seed: u64,
) -> Result<RunRecord> {
    let started = Instant::now();
    let upper = spec.upper_matroid();
    let mut order: Vec<usize> = (0..m.universe_size()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut s = ElementSet::new();
    let (mut o1, mut o2) = (m.local(&s), upper.local(&s));
    for e in order {
        if o1.can_add(e) && o2.can_add(e) {
            s.insert(e);
            o1.push(e);
            o2.push(e);
        }
    }
    finish(ev, m, spec, s, seed, started)
}

/// Splits `s` in two by dealing each color's elements alternately, in
/// ascending order, starting with the first half.
pub fn split_alternating(spec: &FairnessSpec, s: &ElementSet) -> (ElementSet, ElementSet) {
    let mut seen = vec![0usize; spec.num_colors()];
    let (mut a, mut b) = (ElementSet::new(), ElementSet::new());
    for &e in s.iter() {
        let c = spec.color_of(e);
        if seen[c].is_multiple_of(2) {
            a.insert(e);
        } else {
            b.insert(e);
        }
        seen[c] += 1;
    }
    (a, b)
}

/// Splits the lower-bound skeleton in two, extends each half greedily and
/// keeps the better extension (ties to the first half).
pub fn baseline_twopass(
    ev: &mut Evaluator,
    m: &MatroidSpec,
    spec: &FairnessSpec,
    seed: u64,
) -> Result<RunRecord> {
    let started = Instant::now();
    let upper = spec.upper_matroid();
    let (first, second) = split_alternating(spec, &skeleton(m, spec)?);
    let a = greedy_extend(ev, m, &upper, &first)?;
    let fa = ev.value();
    let b = greedy_extend(ev, m, &upper, &second)?;
    let fb = ev.value();
    let s = if fb > fa { b } else { a };
    finish(ev, m, spec, s, seed, started)
}
