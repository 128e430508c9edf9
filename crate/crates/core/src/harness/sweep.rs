use std::collections::BTreeMap;
use std::fs::File;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{gen_instance, GenParams, InstanceKind};
use super::instance::Instance;
use super::runner::{run_once, AlgoSpec, Outcome, ResultRow, RowStatus};
use crate::algorithms::{prepare, Algorithm, Prepared, RunConfig};
use crate::error::{Error, Result};
use crate::objective::Evaluator;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub kind: InstanceKind,
    pub n: usize,
    pub colors: usize,
    pub algos: Vec<AlgoSpec>,
    pub r_values: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    /// Epsilon for algorithm tags given without one.
    pub epsilon: f64,
    pub fast_paths: bool,
    pub output: Option<PathBuf>,
}

/// Parses `start:stop:step` (inclusive) or a single value.
pub fn parse_range(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Config(format!("bad range {s:?}, expected start:stop:step"));
    let parts: Vec<usize> = s
        .split(':')
        .map(|p| p.trim().parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    match parts[..] {
        [v] => Ok(vec![v]),
        [start, stop] => Ok((start..=stop).collect()),
        [start, stop, step] if step > 0 && start <= stop => {
            Ok((start..=stop).step_by(step).collect())
        }
        _ => Err(bad()),
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for one repetition, independent of scheduling.
pub fn mix_seed(base: u64, algo_index: usize, r: usize, rep: usize) -> u64 {
    [algo_index as u64, r as u64, rep as u64]
        .into_iter()
        .fold(splitmix64(base), |h, x| splitmix64(h ^ x))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryEntry {
    pub algo: String,
    pub r: usize,
    /// Feasible rows aggregated.
    pub count: usize,
    pub f_mean: f64,
    pub f_std: f64,
    pub fav_mean: f64,
    pub fav_std: f64,
    pub size_mean: f64,
    pub size_std: f64,
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Mean and sample standard deviation per (algorithm, r), over feasible rows,
/// in order of first appearance.
pub fn summarize(rows: &[ResultRow]) -> Vec<SummaryEntry> {
    let mut order = Vec::new();
    let mut groups: BTreeMap<(String, usize), Vec<&ResultRow>> = BTreeMap::new();
    for row in rows {
        let key = (row.algo.clone(), row.r);
        let entry = groups.entry(key.clone()).or_default();
        if entry.is_empty() {
            order.push(key);
        }
        if row.status == RowStatus::Ok {
            entry.push(row);
        }
    }
    order
        .into_iter()
        .map(|key| {
            let g = &groups[&key];
            let col = |f: fn(&ResultRow) -> Option<f64>| -> Vec<f64> { g.iter().filter_map(|r| f(r)).collect() };
            let (f_mean, f_std) = mean_std(&col(|r| r.f_value));
            let (fav_mean, fav_std) = mean_std(&col(|r| r.fav.map(|v| v as f64)));
            let (size_mean, size_std) = mean_std(&col(|r| r.size.map(|v| v as f64)));
            SummaryEntry {
                algo: key.0,
                r: key.1,
                count: g.len(),
                f_mean,
                f_std,
                fav_mean,
                fav_std,
                size_mean,
                size_std,
            }
        })
        .collect()
}

pub fn summary_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".summary.json");
    PathBuf::from(s)
}

struct Prepped {
    id: String,
    r: usize,
    instance: Option<Instance>,
    prepared: Option<Prepared>,
    /// Set when the instance cannot be generated or has no fair base.
    infeasible: bool,
}

/// Runs every (algorithm, r, repetition) and returns the rows in that order.
/// With an output path, also writes the CSV and `<output>.summary.json`.
pub fn sweep(spec: &SweepSpec) -> Result<(Vec<ResultRow>, Vec<SummaryEntry>)> {
    if spec.reps == 0 || spec.algos.is_empty() || spec.r_values.is_empty() {
        return Err(Error::Config("a sweep needs at least one algorithm, r value and repetition".into()));
    }
    // Fail on unwritable paths before doing any work.
    let writers = match &spec.output {
        Some(path) => Some((File::create(path)?, File::create(summary_path(path))?)),
        None => None,
    };

    let needs_prep = spec.algos.iter().any(|a| a.algorithm == Algorithm::Randomized);
    let prepped: Vec<Prepped> = spec
        .r_values
        .par_iter()
        .map(|&r| -> Result<Prepped> {
            let params = GenParams { kind: spec.kind, n: spec.n, colors: spec.colors, r, seed: spec.seed };
            let id = format!("{}-n{}-c{}-s{}-r{r}", spec.kind, spec.n, spec.colors, spec.seed);
            let instance = match gen_instance(&params) {
                Ok(i) => i,
                Err(Error::Config(_)) => {
                    return Ok(Prepped { id, r, instance: None, prepared: None, infeasible: true })
                }
                Err(e) => return Err(e),
            };
            let (prepared, infeasible) = if needs_prep {
                let mut ev = Evaluator::new(&instance.objective)?;
                match prepare(&mut ev, &instance.matroid, &instance.fairness) {
                    Ok(p) => (Some(p), false),
                    Err(Error::Infeasible(_)) => (None, true),
                    Err(e) => return Err(e),
                }
            } else {
                (None, false)
            };
            Ok(Prepped { id, r, instance: Some(instance), prepared, infeasible })
        })
        .collect::<Result<_>>()?;

    // One unit per seeded repetition; deterministic algorithms run once per r.
    let mut units = Vec::new();
    for (ai, algo) in spec.algos.iter().enumerate() {
        for ri in 0..prepped.len() {
            let reps = if algo.algorithm.is_seeded() { spec.reps } else { 1 };
            units.extend((0..reps).map(|rep| (ai, ri, rep)));
        }
    }
    let outcomes: Vec<Outcome> = units
        .par_iter()
        .map(|&(ai, ri, rep)| {
            let p = &prepped[ri];
            let algo = &spec.algos[ai];
            let Some(instance) = &p.instance else {
                return Ok(Outcome::Infeasible("instance could not be generated".into()));
            };
            if p.infeasible && algo.algorithm == Algorithm::Randomized {
                return Ok(Outcome::Infeasible("no fair independent set".into()));
            }
            let mut cfg = RunConfig::new(algo.algorithm, spec.epsilon, mix_seed(spec.seed, ai, p.r, rep));
            cfg.fast_paths = spec.fast_paths;
            run_once(instance, algo, &cfg, p.prepared.as_ref())
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    for (&(ai, ri, rep), outcome) in units.iter().zip(&outcomes) {
        let algo = &spec.algos[ai];
        let p = &prepped[ri];
        let epsilon = algo.algorithm.uses_epsilon().then(|| algo.resolve_epsilon(spec.epsilon));
        let reps = if algo.algorithm.is_seeded() { rep..rep + 1 } else { 0..spec.reps };
        for rep in reps {
            let seed = mix_seed(spec.seed, ai, p.r, rep);
            rows.push(ResultRow::from_outcome(&p.id, algo, epsilon, p.r, rep, seed, outcome));
        }
    }
    let summary = summarize(&rows);

    if let Some((csv_file, json_file)) = writers {
        let mut w = csv::Writer::from_writer(csv_file);
        for row in &rows {
            w.serialize(row)?;
        }
        w.flush()?;
        serde_json::to_writer_pretty(json_file, &summary)?;
    }
    Ok((rows, summary))
}
