use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::instance::Instance;
use crate::algorithms::{self, Algorithm, Prepared, RunConfig, RunRecord};
use crate::error::{Error, Result};
use crate::objective::Evaluator;

/// An algorithm with an optional fixed epsilon, written `our`, `our:0.5`,
/// `det:0.3`, `twopass`, `lbmi`, `ubmi` or `random`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgoSpec {
    pub algorithm: Algorithm,
    pub epsilon: Option<f64>,
}

impl AlgoSpec {
    pub fn resolve_epsilon(&self, default: f64) -> f64 {
        self.epsilon.unwrap_or(default)
    }
}

impl FromStr for AlgoSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, eps) = match s.split_once(':') {
            Some((name, eps)) => (name, Some(eps)),
            None => (s, None),
        };
        let algorithm: Algorithm = name.parse()?;
        let epsilon = match eps {
            None => None,
            Some(_) if !algorithm.uses_epsilon() => {
                return Err(Error::Config(format!("{name} takes no epsilon")))
            }
            Some(e) => {
                let v: f64 = e
                    .parse()
                    .map_err(|_| Error::Config(format!("bad epsilon {e:?} in {s:?}")))?;
                algorithms::check_epsilon(v)?;
                Some(v)
            }
        };
        Ok(AlgoSpec { algorithm, epsilon })
    }
}

impl fmt::Display for AlgoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.epsilon {
            Some(e) => write!(f, "{}:{e}", self.algorithm),
            None => write!(f, "{}", self.algorithm),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Ok,
    Infeasible,
}

/// One CSV row. Metrics are recomputed from the solution, not copied from
/// the algorithm's own report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub instance: String,
    pub algo: String,
    pub epsilon: Option<f64>,
    pub r: usize,
    pub rep: usize,
    pub seed: u64,
    pub f_value: Option<f64>,
    pub size: Option<usize>,
    pub fav: Option<usize>,
    pub runtime_ms: f64,
    pub status: RowStatus,
}

/// Where a run of one (instance, algorithm, seed) ended up.
pub enum Outcome {
    Done(RunRecord),
    Infeasible(String),
}

/// Runs one algorithm on one instance and re-checks its output.
pub fn run_once(
    instance: &Instance,
    algo: &AlgoSpec,
    cfg: &RunConfig,
    prepared: Option<&Prepared>,
) -> Result<Outcome> {
    let mut cfg = cfg.clone();
    cfg.algorithm = algo.algorithm;
    cfg.epsilon = algo.resolve_epsilon(cfg.epsilon);
    if algo.algorithm.uses_epsilon() {
        cfg.validate()?;
    }
    let mut ev = Evaluator::new(&instance.objective)?;
    let (m, spec) = (&instance.matroid, &instance.fairness);
    let result = match (algo.algorithm, prepared) {
        (Algorithm::Randomized, Some(prep)) => {
            algorithms::run_randomized_prepared(&mut ev, m, spec, prep, &cfg)
        }
        _ => algorithms::run(&mut ev, m, spec, &cfg),
    };
    let rec = match result {
        Ok(rec) => rec,
        Err(Error::Infeasible(msg)) => return Ok(Outcome::Infeasible(msg)),
        Err(e) => return Err(e),
    };
    recheck(instance, &rec)?;
    Ok(Outcome::Done(rec))
}

/// Independent recomputation of every reported metric.
pub fn recheck(instance: &Instance, rec: &RunRecord) -> Result<()> {
    let s = &rec.solution;
    if !instance.matroid.is_independent(s)? || !instance.fairness.is_upper_fair(s) {
        return Err(Error::invariant("solution is not independent and upper-fair"));
    }
    let f = Evaluator::new(&instance.objective)?.evaluate(s)?;
    let fav = instance.fairness.fav(s);
    let tol = 1e-9 * f.abs().max(1.0);
    if rec.size != s.len() || rec.fav != fav || (rec.f_value - f).abs() > tol {
        return Err(Error::invariant(format!(
            "reported (f {}, size {}, fav {}) but recomputed (f {f}, size {}, fav {fav})",
            rec.f_value,
            rec.size,
            rec.fav,
            s.len()
        )));
    }
    Ok(())
}

impl ResultRow {
    pub fn from_outcome(
        instance_id: &str,
        algo: &AlgoSpec,
        epsilon: Option<f64>,
        r: usize,
        rep: usize,
        seed: u64,
        outcome: &Outcome,
    ) -> Self {
        let base = ResultRow {
            instance: instance_id.to_string(),
            algo: algo.to_string(),
            epsilon,
            r,
            rep,
            seed,
            f_value: None,
            size: None,
            fav: None,
            runtime_ms: 0.0,
            status: RowStatus::Infeasible,
        };
        match outcome {
            Outcome::Done(rec) => ResultRow {
                f_value: Some(rec.f_value),
                size: Some(rec.size),
                fav: Some(rec.fav),
                runtime_ms: rec.wall_time_ms,
                status: RowStatus::Ok,
                ..base
            },
            Outcome::Infeasible(_) => base,
        }
    }
}
