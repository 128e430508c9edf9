//! Solvers: greedy intersection, maximum common independent sets, the fair
//! base, the randomized and deterministic exchange algorithms, baselines and
//! an exhaustive reference.

mod baselines;
mod brute;
mod deterministic;
mod fair_base;
mod greedy;
mod intersection;
mod randomized;

pub use baselines::{baseline_lbmi, baseline_random, baseline_twopass, baseline_ubmi, split_alternating};
pub use brute::{brute_force, BruteForce, BRUTE_FORCE_LIMIT};
pub use deterministic::run_deterministic_two_matroids;
pub use fair_base::{build_fair_base, fair_skeleton, FairBase};
pub use greedy::{greedy_extend, greedy_intersection};
pub use intersection::max_card_intersection;
pub use randomized::{draw_iterations, prepare, run_randomized, run_randomized_prepared, Prepared};

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fairness::FairnessSpec;
use crate::matroid::MatroidSpec;
use crate::objective::Evaluator;
use crate::set::ElementSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Random augmenting and alternating paths.
    Randomized,
    /// Deterministic exchange on the two matroids `I` and the upper-bound matroid.
    Deterministic,
    TwoPass,
    Lbmi,
    Ubmi,
    Random,
}

impl Algorithm {
    pub fn uses_epsilon(self) -> bool {
        matches!(self, Algorithm::Randomized | Algorithm::Deterministic)
    }

    pub fn is_seeded(self) -> bool {
        matches!(self, Algorithm::Randomized | Algorithm::Random)
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Randomized => "our",
            Algorithm::Deterministic => "det",
            Algorithm::TwoPass => "twopass",
            Algorithm::Lbmi => "lbmi",
            Algorithm::Ubmi => "ubmi",
            Algorithm::Random => "random",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "our" => Algorithm::Randomized,
            "det" => Algorithm::Deterministic,
            "twopass" => Algorithm::TwoPass,
            "lbmi" => Algorithm::Lbmi,
            "ubmi" => Algorithm::Ubmi,
            "random" => Algorithm::Random,
            _ => return Err(Error::Config(format!("unknown algorithm {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub epsilon: f64,
    pub seed: u64,
    pub algorithm: Algorithm,
    /// Re-verify every exchange and intermediate set, also in release builds.
    pub debug_verify: bool,
    /// Use the partition-matroid path decomposition when it applies.
    pub fast_paths: bool,
}

impl RunConfig {
    pub fn new(algorithm: Algorithm, epsilon: f64, seed: u64) -> Self {
        RunConfig {
            epsilon,
            seed,
            algorithm,
            debug_verify: false,
            fast_paths: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_epsilon(self.epsilon)
    }
}

pub fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("epsilon must lie strictly inside (0, 1), got {epsilon}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    pub solution: ElementSet,
    pub f_value: f64,
    pub size: usize,
    pub fav: usize,
    /// Number of exchanges applied.
    pub iterations: usize,
    /// Deficiency of the starting set (or `|P| - |Y0|` for two matroids).
    pub k_initial: usize,
    /// Largest size of a common independent set, when computed.
    pub n_max: Option<usize>,
    /// `f(Y0)`, the greedy starting point's value, when there is one.
    pub y0_value: Option<f64>,
    pub y0_fav: Option<usize>,
    /// Deficiency after each applied exchange, starting with `k_initial`.
    pub k_trace: Vec<usize>,
    pub seed: u64,
    pub wall_time_ms: f64,
}

impl RunRecord {
    pub(crate) fn new(
        ev: &Evaluator,
        spec: Option<&FairnessSpec>,
        solution: ElementSet,
        seed: u64,
        started: Instant,
    ) -> Self {
        RunRecord {
            f_value: ev.value_unchecked(&solution),
            size: solution.len(),
            fav: spec.map_or(0, |s| s.fav(&solution)),
            solution,
            iterations: 0,
            k_initial: 0,
            n_max: None,
            y0_value: None,
            y0_fav: None,
            k_trace: Vec::new(),
            seed,
            wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

/// Dispatches on `cfg.algorithm`. The deterministic algorithm runs on `m`
/// and the upper-bound matroid of `spec`.
pub fn run(
    ev: &mut Evaluator,
    m: &MatroidSpec,
    spec: &FairnessSpec,
    cfg: &RunConfig,
) -> Result<RunRecord> {
    let mut rec = match cfg.algorithm {
        Algorithm::Randomized => run_randomized(ev, m, spec, cfg)?,
        Algorithm::Deterministic => {
            run_deterministic_two_matroids(ev, m, &spec.upper_matroid(), cfg.epsilon)?
        }
        Algorithm::TwoPass => baseline_twopass(ev, m, spec, cfg.seed)?,
        Algorithm::Lbmi => baseline_lbmi(ev, m, spec)?,
        Algorithm::Ubmi => baseline_ubmi(ev, m, spec)?,
        Algorithm::Random => baseline_random(ev, m, spec, cfg.seed)?,
    };
    rec.fav = spec.fav(&rec.solution);
    rec.seed = cfg.seed;
    Ok(rec)
}

/// Output feasibility, checked after every run.
pub(crate) fn ensure_feasible(m: &MatroidSpec, spec: &FairnessSpec, s: &ElementSet) -> Result<()> {
    if !m.independent(s) {
        return Err(Error::invariant(format!("output {s:?} is not independent")));
    }
    if !spec.is_upper_fair(s) {
        return Err(Error::invariant(format!("output {s:?} exceeds an upper bound")));
    }
    Ok(())
}

/// `floor(x)`, snapping values within rounding noise of an integer.
pub(crate) fn snapped_floor(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r.max(0.0) as usize
    } else {
        x.floor().max(0.0) as usize
    }
}
