//! Synthetic instances shaped like the coverage, clustering and recommender
//! experiments: a partition matroid on one attribute, fairness bounds on
//! another, both scaled by a solution-size factor `r`.

use std::fmt;
use std::str::FromStr;

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::Normal;
use serde::{Deserialize, Serialize};

use super::instance::{Instance, Metadata};
use crate::error::{Error, Result};
use crate::fairness::FairnessSpec;
use crate::matroid::MatroidSpec;
use crate::objective::ObjectiveSpec;

pub const MAX_GENERATED: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    Coverage,
    Clustering,
    Recommender,
}

impl InstanceKind {
    pub fn default_n(self) -> usize {
        match self {
            InstanceKind::Coverage => 2000,
            InstanceKind::Clustering => 500,
            InstanceKind::Recommender => 1000,
        }
    }

    pub fn default_colors(self) -> usize {
        match self {
            InstanceKind::Coverage => 7,
            InstanceKind::Clustering => 6,
            InstanceKind::Recommender => 18,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::Coverage => "coverage",
            InstanceKind::Clustering => "clustering",
            InstanceKind::Recommender => "recommender",
        }
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InstanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coverage" => Ok(InstanceKind::Coverage),
            "clustering" => Ok(InstanceKind::Clustering),
            "recommender" => Ok(InstanceKind::Recommender),
            _ => Err(Error::Config(format!("unknown instance kind {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub kind: InstanceKind,
    pub n: usize,
    pub colors: usize,
    pub r: usize,
    pub seed: u64,
}

impl GenParams {
    pub fn new(kind: InstanceKind, r: usize, seed: u64) -> Self {
        GenParams {
            kind,
            n: kind.default_n(),
            colors: kind.default_colors(),
            r,
            seed,
        }
    }
}

/// Draws labels in `0..weights.len()` with the given relative weights.
fn labels(rng: &mut ChaCha8Rng, n: usize, weights: Vec<f64>) -> Vec<usize> {
    let dist = WeightedIndex::new(&weights).expect("positive weights");
    (0..n).map(|_| dist.sample(rng)).collect()
}

fn random_weights(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    (0..k).map(|_| rng.gen_range(0.3..1.7)).collect()
}

fn shares(labels: &[usize], k: usize) -> Vec<f64> {
    let mut counts = vec![0usize; k];
    for &l in labels {
        counts[l] += 1;
    }
    counts.iter().map(|&c| c as f64 / labels.len() as f64).collect()
}

fn ceil_scaled(share: f64, factor: f64, r: usize) -> usize {
    (factor * share * r as f64 - 1e-9).ceil().max(0.0) as usize
}

fn floor_scaled(share: f64, factor: f64, r: usize) -> usize {
    (factor * share * r as f64 + 1e-9).floor() as usize
}

/// Generates one instance. The random structure depends only on
/// `(kind, n, colors, seed)`; `r` only changes the caps and bounds.
pub fn gen_instance(p: &GenParams) -> Result<Instance> {
    if p.n == 0 || p.n > MAX_GENERATED {
        return Err(Error::Config(format!("n must lie in 1..={MAX_GENERATED}, got {}", p.n)));
    }
    if p.colors == 0 || p.colors > p.n {
        return Err(Error::Config(format!("colors must lie in 1..=n, got {}", p.colors)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let (objective, colors, groups, caps, lower, upper) = match p.kind {
        InstanceKind::Coverage => coverage(&mut rng, p),
        InstanceKind::Clustering => clustering(&mut rng, p),
        InstanceKind::Recommender => recommender(&mut rng, p),
    };
    check_bounds(&colors, &groups, &caps, &lower, &upper)?;
    Instance::new(
        MatroidSpec::partition(groups, caps)?,
        FairnessSpec::new(colors, lower, upper)?,
        objective,
        Metadata {
            kind: Some(p.kind.name().to_string()),
            seed: Some(p.seed),
            r: Some(p.r),
        },
    )
}

type Parts = (ObjectiveSpec, Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>);

/// Directed graph whose out-degrees shrink with the color index, so greedy
/// coverage under-represents the later colors. Four matroid groups with caps
/// `ceil(share * r)`; bounds `floor(0.9 share r)` and `ceil(1.5 share r)`.
fn coverage(rng: &mut ChaCha8Rng, p: &GenParams) -> Parts {
    let colors = {
        let w = random_weights(rng, p.colors);
        labels(rng, p.n, w)
    };
    let groups = labels(rng, p.n, vec![0.05, 0.45, 0.35, 0.15]);
    let span = (p.colors.max(2) - 1) as f64;
    let neighbors = colors
        .iter()
        .map(|&c| {
            let mean = 2.0 + 28.0 * ((span - c as f64) / span).powi(2);
            let degree = rng.gen_range(1..=(2.0 * mean) as usize);
            (0..degree).map(|_| rng.gen_range(0..p.n)).collect()
        })
        .collect();
    let objective = ObjectiveSpec::Coverage { items: p.n, neighbors };
    let caps = shares(&groups, 4).iter().map(|&s| ceil_scaled(s, 1.0, p.r)).collect();
    let cs = shares(&colors, p.colors);
    let lower = cs.iter().map(|&s| floor_scaled(s, 0.9, p.r)).collect();
    let upper = cs.iter().map(|&s| ceil_scaled(s, 1.5, p.r)).collect();
    (objective, colors, groups, caps, lower, upper)
}

/// Points in R^7 around a few centers; colors follow the nearest center
/// loosely. Five equal-cap groups (`ceil(r / 5)`) and per-color bounds
/// `floor(0.1 r + 2)` and `floor(0.4 r)`.
fn clustering(rng: &mut ChaCha8Rng, p: &GenParams) -> Parts {
    const DIM: usize = 7;
    let spread = Normal::new(0.0, 3.0).expect("valid normal");
    let noise = Normal::new(0.0, 1.0).expect("valid normal");
    let centers: Vec<Vec<f64>> = (0..8)
        .map(|_| (0..DIM).map(|_| spread.sample(rng)).collect())
        .collect();
    let mut points = Vec::with_capacity(p.n);
    let mut colors = Vec::with_capacity(p.n);
    for _ in 0..p.n {
        let c = rng.gen_range(0..centers.len());
        points.push(centers[c].iter().map(|x| x + noise.sample(rng)).collect());
        let color = if rng.gen_bool(0.7) { c % p.colors } else { rng.gen_range(0..p.colors) };
        colors.push(color);
    }
    let groups = labels(rng, p.n, vec![1.0; 5]);
    let caps = vec![p.r.div_ceil(5); 5];
    let lower = vec![floor_scaled(1.0, 0.1, p.r) + 2; p.colors];
    let upper = vec![floor_scaled(1.0, 0.4, p.r); p.colors];
    (ObjectiveSpec::Clustering { points }, colors, groups, caps, lower, upper)
}

/// Non-negative 20-dimensional item factors and user vector, so every user
/// score is non-negative. Nine decade groups with caps `ceil(1.2 share r)`;
/// genre bounds `floor(0.8 share r)` and `ceil(1.4 share r)`.
fn recommender(rng: &mut ChaCha8Rng, p: &GenParams) -> Parts {
    const DIM: usize = 20;
    let unit = |rng: &mut ChaCha8Rng, scale: f64| -> Vec<f64> {
        let v: Vec<f64> = (0..DIM).map(|_| rng.gen::<f64>().powi(2)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-12);
        v.iter().map(|x| scale * x / norm).collect()
    };
    let items: Vec<Vec<f64>> = (0..p.n)
        .map(|_| {
            let scale = rng.gen_range(0.5..1.5);
            unit(rng, scale)
        })
        .collect();
    let user = unit(rng, 1.0);
    let colors = {
        let w = random_weights(rng, p.colors);
        labels(rng, p.n, w)
    };
    let groups = {
        let w = random_weights(rng, 9);
        labels(rng, p.n, w)
    };
    let caps = shares(&groups, 9).iter().map(|&s| ceil_scaled(s, 1.2, p.r)).collect();
    let cs = shares(&colors, p.colors);
    let lower = cs.iter().map(|&s| floor_scaled(s, 0.8, p.r)).collect();
    let upper = cs.iter().map(|&s| ceil_scaled(s, 1.4, p.r)).collect();
    let objective = ObjectiveSpec::Recommender { items, user, alpha: 0.85 };
    (objective, colors, groups, caps, lower, upper)
}

/// Necessary conditions for feasibility that can be checked cheaply.
fn check_bounds(
    colors: &[usize],
    groups: &[usize],
    caps: &[usize],
    lower: &[usize],
    upper: &[usize],
) -> Result<()> {
    let mut color_sizes = vec![0usize; lower.len()];
    for &c in colors {
        color_sizes[c] += 1;
    }
    for c in 0..lower.len() {
        if lower[c] > upper[c] {
            return Err(Error::Config(format!(
                "color {c}: lower bound {} exceeds upper bound {}",
                lower[c], upper[c]
            )));
        }
        if lower[c] > color_sizes[c] {
            return Err(Error::Config(format!(
                "color {c}: lower bound {} exceeds its {} elements",
                lower[c], color_sizes[c]
            )));
        }
    }
    let mut group_sizes = vec![0usize; caps.len()];
    for &g in groups {
        group_sizes[g] += 1;
    }
    let rank: usize = caps.iter().zip(&group_sizes).map(|(&c, &s)| c.min(s)).sum();
    let need: usize = lower.iter().sum();
    if need > rank {
        return Err(Error::Config(format!(
            "lower bounds need {need} elements, but the matroid rank is {rank}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clustering_bounds_at_thirty() {
        let inst = gen_instance(&GenParams::new(InstanceKind::Clustering, 30, 1)).unwrap();
        assert!(inst.fairness.lower.iter().all(|&l| l == 5));
        assert!(inst.fairness.upper.iter().all(|&u| u == 12));
        let MatroidSpec::Partition { caps, .. } = &inst.matroid else { panic!() };
        assert_eq!(caps, &vec![6; 5]);
    }

    #[test]
    fn equal_shares_round_up() {
        assert_eq!(ceil_scaled(0.25, 1.0, 10), 3);
        assert_eq!(ceil_scaled(0.25, 1.0, 8), 2);
        assert_eq!(floor_scaled(0.1, 1.0, 30), 3);
    }

    #[test]
    fn deterministic_bytes() {
        for kind in [InstanceKind::Coverage, InstanceKind::Clustering, InstanceKind::Recommender] {
            let mut p = GenParams::new(kind, 40, 9);
            p.n = 200;
            let a = gen_instance(&p).unwrap().to_json().unwrap();
            let b = gen_instance(&p).unwrap().to_json().unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn infeasible_parameters_named() {
        let err = gen_instance(&GenParams::new(InstanceKind::Clustering, 10, 1)).unwrap_err();
        assert!(err.to_string().contains("lower bounds need"), "{err}");
    }

    #[test]
    fn recommender_scores_non_negative() {
        let mut p = GenParams::new(InstanceKind::Recommender, 20, 3);
        p.n = 100;
        let inst = gen_instance(&p).unwrap();
        assert!(inst.objective.validate().is_ok());
    }
}
