use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_fair_base, check_epsilon, ensure_feasible, greedy_intersection, RunConfig, RunRecord};
use crate::error::{Error, Result};
use crate::exchange::{apply_exchange, check_exchange, fast_paths_partition, generate_paths};
use crate::fairness::FairnessSpec;
use crate::matroid::MatroidSpec;
use crate::objective::Evaluator;
use crate::set::ElementSet;

/// The seed-independent part of a randomized run.
#[derive(Clone, Debug, PartialEq)]
pub struct Prepared {
    /// A largest fair independent set.
    pub p: ElementSet,
    /// Greedy solution over `I` and the upper-bound matroid.
    pub y0: ElementSet,
    pub y0_value: f64,
    pub k: usize,
}

pub fn prepare(ev: &mut Evaluator, m: &MatroidSpec, spec: &FairnessSpec) -> Result<Prepared> {
    let p = build_fair_base(m, spec)?.into_result()?;
    let y0 = greedy_intersection(ev, m, &spec.upper_matroid())?;
    Ok(Prepared {
        k: spec.deficiency_k(&y0, &p),
        y0_value: ev.value(),
        p,
        y0,
    })
}

/// Number of exchanges: `ceil(x)` with probability `x - floor(x)`, else
/// `floor(x)`, for `x = (1 - epsilon) k`. The expectation is exactly `x`.
pub fn draw_iterations(epsilon: f64, k: usize, rng: &mut impl Rng) -> usize {
    let x = (1.0 - epsilon) * k as f64;
    let base = super::snapped_floor(x);
    let frac = (x - base as f64).max(0.0);
    let extra = usize::from(frac > 1e-12 && rng.gen::<f64>() < frac);
    (base + extra).min(k)
}

pub fn run_randomized(
    ev: &mut Evaluator,
    m: &MatroidSpec,
    spec: &FairnessSpec,
    cfg: &RunConfig,
) -> Result<RunRecord> {
    check_epsilon(cfg.epsilon)?;
    let started = Instant::now();
    let prep = prepare(ev, m, spec)?;
    let mut rec = run_randomized_prepared(ev, m, spec, &prep, cfg)?;
    rec.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(rec)
}

/// Runs the exchange phase from a cached [`Prepared`]. Wall time covers this
/// phase only.
pub fn run_randomized_prepared(
    ev: &mut Evaluator,
    m: &MatroidSpec,
    spec: &FairnessSpec,
    prep: &Prepared,
    cfg: &RunConfig,
) -> Result<RunRecord> {
    check_epsilon(cfg.epsilon)?;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let iterations = draw_iterations(cfg.epsilon, prep.k, &mut rng);
    let upper = spec.upper_matroid();
    let fast = cfg.fast_paths && m.is_partition();

    let mut y = prep.y0.clone();
    let mut trace = vec![prep.k];
    for i in 1..=iterations {
        let paths = if fast {
            fast_paths_partition(m, &upper, &y, &prep.p)?
        } else {
            generate_paths(m, spec, &y, &prep.p)?
        };
        if paths.is_empty() {
            return Err(Error::invariant("no exchange available before the last iteration"));
        }
        let x = &paths[rng.gen_range(0..paths.len())];
        if cfg.debug_verify {
            check_exchange(m, spec, &y, &prep.p, x)?;
        }
        y = apply_exchange(&y, x);
        let k = spec.deficiency_k(&y, &prep.p);
        if k != prep.k - i {
            return Err(Error::invariant(format!(
                "deficiency {k} after {i} exchanges, expected {}",
                prep.k - i
            )));
        }
        trace.push(k);
    }
    ensure_feasible(m, spec, &y)?;

    let mut rec = RunRecord::new(ev, Some(spec), y, cfg.seed, started);
    rec.iterations = iterations;
    rec.k_initial = prep.k;
    rec.n_max = Some(prep.p.len());
    rec.y0_value = Some(prep.y0_value);
    rec.y0_fav = Some(spec.fav(&prep.y0));
    rec.k_trace = trace;
    Ok(rec)
}
