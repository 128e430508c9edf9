use std::time::Instant;

use super::{check_epsilon, greedy_intersection, max_card_intersection, snapped_floor, RunRecord};
use crate::error::{Error, Result};
use crate::exchange::{apply_exchange, generate_paths_two_matroids};
use crate::matroid::MatroidSpec;
use crate::objective::Evaluator;

/// Starts from the greedy solution and applies `floor((1 - epsilon)(|P| - |Y0|))`
/// augmenting sets toward a largest common independent set `P`, each time
/// choosing the one giving the largest `f` (ties to the lexicographically
/// smallest set).
pub fn run_deterministic_two_matroids(
    ev: &mut Evaluator,
    m1: &MatroidSpec,
    m2: &MatroidSpec,
    epsilon: f64,
) -> Result<RunRecord> {
    check_epsilon(epsilon)?;
    let started = Instant::now();
    let p = max_card_intersection(m1, m2)?;
    let y0 = greedy_intersection(ev, m1, m2)?;
    let y0_value = ev.value();
    let gap = p.len().saturating_sub(y0.len());
    let iterations = snapped_floor((1.0 - epsilon) * gap as f64);

    let mut y = y0;
    let mut trace = vec![gap];
    for _ in 0..iterations {
        let paths = generate_paths_two_matroids(m1, m2, &y, &p)?;
        let mut best: Option<(f64, Vec<usize>, _)> = None;
        for x in &paths {
            let next = apply_exchange(&y, x);
            let value = ev.value_unchecked(&next);
            let key = x.elements().into_vec();
            let better = match &best {
                None => true,
                Some((v, k, _)) => value > *v || (value == *v && key < *k),
            };
            if better {
                best = Some((value, key, next));
            }
        }
        let (_, _, next) = best.ok_or_else(|| Error::invariant("no augmenting set left"))?;
        y = next;
        trace.push(p.len() - y.len());
    }
    if !m1.independent(&y) || !m2.independent(&y) {
        return Err(Error::invariant("output is not common independent"));
    }

    let mut rec = RunRecord::new(ev, None, y, 0, started);
    rec.iterations = iterations;
    rec.k_initial = gap;
    rec.n_max = Some(p.len());
    rec.y0_value = Some(y0_value);
    rec.k_trace = trace;
    Ok(rec)
}
