//! Random instances and exhaustive oracles shared by the integration tests.
#![allow(dead_code)]

use fair_matroid::exchange::{apply_exchange, fast_paths_partition, generate_paths, ExchangeSet, PathKind};
use fair_matroid::{ElementSet, Evaluator, FairnessSpec, MatroidSpec, ObjectiveSpec};
use fair_matroid::matroid::ExplicitMatroid;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rank of a set of GF(2) vectors given as bitmasks.
pub fn gf2_rank(vectors: impl IntoIterator<Item = u32>) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Linear matroid over GF(2): element `e` is the vector `vectors[e]`.
pub fn binary_matroid(vectors: &[u32]) -> MatroidSpec {
    let m = ExplicitMatroid::from_predicate(vectors.len(), |s| {
        gf2_rank(s.iter().map(|&e| vectors[e])) == s.len()
    })
    .expect("small universe");
    MatroidSpec::Explicit(m)
}

pub fn random_binary(rng: &mut ChaCha8Rng, n: usize) -> MatroidSpec {
    let dim = rng.gen_range(1..=n.clamp(1, 8));
    let vectors: Vec<u32> = (0..n).map(|_| rng.gen_range(0..1u32 << dim)).collect();
    binary_matroid(&vectors)
}

pub fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> MatroidSpec {
    let parts = rng.gen_range(1..=n.clamp(1, 5));
    let groups = (0..n).map(|_| rng.gen_range(0..parts)).collect();
    let caps = (0..parts).map(|_| rng.gen_range(0..=4)).collect();
    MatroidSpec::partition(groups, caps).unwrap()
}

pub fn random_uniform(rng: &mut ChaCha8Rng, n: usize) -> MatroidSpec {
    MatroidSpec::uniform(n, rng.gen_range(0..=n))
}

/// Partition, uniform or (for `n <= explicit_limit`) binary.
pub fn random_matroid(rng: &mut ChaCha8Rng, n: usize, explicit_limit: usize) -> MatroidSpec {
    match rng.gen_range(0..if n <= explicit_limit { 3 } else { 2 }) {
        0 => random_partition(rng, n),
        1 => random_uniform(rng, n),
        _ => random_binary(rng, n),
    }
}

pub fn random_fairness(rng: &mut ChaCha8Rng, n: usize, max_colors: usize) -> FairnessSpec {
    let c = rng.gen_range(1..=max_colors.min(n.max(1)));
    let colors: Vec<usize> = (0..n).map(|_| rng.gen_range(0..c)).collect();
    let mut sizes = vec![0; c];
    for &x in &colors {
        sizes[x] += 1;
    }
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for &s in &sizes {
        let u = rng.gen_range(s / 3..=s);
        let l = if s == 0 { 0 } else { rng.gen_range(0..=u.min(2)) };
        lower.push(l);
        upper.push(u.max(l));
    }
    FairnessSpec::new(colors, lower, upper).unwrap()
}

pub fn random_objective(rng: &mut ChaCha8Rng, n: usize) -> ObjectiveSpec {
    match rng.gen_range(0..4) {
        0 => {
            let items = rng.gen_range(1..=2 * n.max(1));
            let neighbors = (0..n)
                .map(|_| (0..rng.gen_range(0..=4)).map(|_| rng.gen_range(0..items)).collect())
                .collect();
            ObjectiveSpec::Coverage { items, neighbors }
        }
        1 => ObjectiveSpec::Clustering {
            points: (0..n)
                .map(|_| (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect())
                .collect(),
        },
        2 => ObjectiveSpec::Linear {
            weights: (0..n).map(|_| rng.gen_range(0.0..10.0f64).round()).collect(),
        },
        _ => ObjectiveSpec::Recommender {
            items: (0..n)
                .map(|_| (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect(),
            user: (0..4).map(|_| rng.gen_range(0.0..1.0)).collect(),
            alpha: rng.gen_range(0.0..=1.0),
        },
    }
}

/// Recommender blends may have negative user scores; replace with a valid
/// objective in that case.
pub fn random_valid_objective(rng: &mut ChaCha8Rng, n: usize) -> ObjectiveSpec {
    loop {
        let f = random_objective(rng, n);
        if f.validate().is_ok() {
            return f;
        }
    }
}

/// All subsets of `0..n` as sorted sets.
pub fn all_subsets(n: usize) -> impl Iterator<Item = ElementSet> {
    (0u32..1 << n).map(ElementSet::from_mask)
}

/// Largest common independent set size, by enumeration.
pub fn brute_max_common(m1: &MatroidSpec, m2: &MatroidSpec, n: usize) -> usize {
    all_subsets(n)
        .filter(|s| m1.independent(s) && m2.independent(s))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

/// A maximal common independent set built in a random order.
pub fn random_maximal(rng: &mut ChaCha8Rng, ms: &[&MatroidSpec], n: usize) -> ElementSet {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut s = ElementSet::new();
    for e in order {
        let t = s.with(e);
        if ms.iter().all(|m| m.independent(&t)) {
            s = t;
        }
    }
    s
}

/// A maximal common independent set preferring some colors: elements are
/// scanned by a random color priority, ties in random order.
pub fn color_biased_maximal(
    rng: &mut ChaCha8Rng,
    ms: &[&MatroidSpec],
    spec: &FairnessSpec,
) -> ElementSet {
    let n = spec.universe_size();
    let priority: Vec<u32> = (0..spec.num_colors()).map(|_| rng.gen()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order.sort_by_key(|&e| priority[spec.colors[e]]);
    let mut s = ElementSet::new();
    for e in order {
        let t = s.with(e);
        if ms.iter().all(|m| m.independent(&t)) {
            s = t;
        }
    }
    s
}

/// `(y, p)`, both independent in `m` and upper-fair, `|y| <= |p|`, drawn to
/// have differing color profiles often.
pub fn random_pair(
    rng: &mut ChaCha8Rng,
    m: &MatroidSpec,
    spec: &FairnessSpec,
) -> (ElementSet, ElementSet) {
    let n = spec.universe_size();
    let upper = spec.upper_matroid();
    let ms = [m, &upper];
    let mut p = match rng.gen_range(0..3) {
        0 => fair_matroid::algorithms::max_card_intersection(m, &upper).unwrap(),
        1 => random_maximal(rng, &ms, n),
        _ => color_biased_maximal(rng, &ms, spec),
    };
    let mut y = match rng.gen_range(0..3) {
        0 => random_common(rng, &ms, n),
        1 => random_maximal(rng, &ms, n),
        _ => color_biased_maximal(rng, &ms, spec),
    };
    if y.len() > p.len() {
        std::mem::swap(&mut y, &mut p);
    }
    (y, p)
}

/// A random common independent subset: a random maximal set, thinned.
pub fn random_common(rng: &mut ChaCha8Rng, ms: &[&MatroidSpec], n: usize) -> ElementSet {
    random_maximal(rng, ms, n)
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.7))
        .collect()
}

/// Per-color counts of `s`.
pub fn counts(spec: &FairnessSpec, s: &[usize]) -> Vec<usize> {
    let mut c = vec![0; spec.num_colors()];
    for &e in s {
        c[spec.colors[e]] += 1;
    }
    c
}

/// The union of `n` disjoint three-edge paths `a - b - c - d` with edge
/// values 0, 1, 0. Edges of path `i` are `3i` (a,b), `3i+1` (b,c) and
/// `3i+2` (c,d). Returns the left-vertex and right-vertex matroids and the
/// objective.
pub fn three_edge_paths(n: usize) -> (MatroidSpec, MatroidSpec, ObjectiveSpec) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 0..n {
        // Left vertices a_i = 2i, c_i = 2i+1; right vertices b_i = 2i, d_i = 2i+1.
        left.extend([2 * i, 2 * i + 1, 2 * i + 1]);
        right.extend([2 * i, 2 * i, 2 * i + 1]);
    }
    let weights = (0..3 * n).map(|e| if e % 3 == 1 { 1.0 } else { 0.0 }).collect();
    (
        MatroidSpec::partition(left, vec![1; 2 * n]).unwrap(),
        MatroidSpec::partition(right, vec![1; 2 * n]).unwrap(),
        ObjectiveSpec::Linear { weights },
    )
}

/// A random matroid, coloring and valid objective on at most `max_n`
/// elements, small enough for exhaustive enumeration when `max_n <= 16`.
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    min_n: usize,
    max_n: usize,
) -> (MatroidSpec, FairnessSpec, ObjectiveSpec) {
    let n = rng.gen_range(min_n..=max_n);
    let m = random_matroid(rng, n, 12);
    let spec = random_fairness(rng, n, 5);
    let f = random_valid_objective(rng, n);
    (m, spec, f)
}

/// Plain greedy: every step rescans all elements and recomputes each gain
/// from scratch. Gains within rounding noise count as ties, broken toward
/// the smallest id.
pub fn naive_greedy(
    f: &ObjectiveSpec,
    m1: &MatroidSpec,
    m2: &MatroidSpec,
) -> ElementSet {
    let ev = Evaluator::new(f).unwrap();
    let n = m1.universe_size();
    let mut s = ElementSet::new();
    loop {
        let mut best: Option<(f64, usize)> = None;
        let base = ev.evaluate(&s).unwrap();
        for e in (0..n).filter(|&e| !s.contains(e)) {
            let t = s.with(e);
            if !m1.independent(&t) || !m2.independent(&t) {
                continue;
            }
            let g = ev.evaluate(&t).unwrap() - base;
            if best.is_none_or(|(bg, _)| g > bg + 1e-9 * bg.abs().max(1.0)) {
                best = Some((g, e));
            }
        }
        match best {
            Some((_, e)) => s.insert(e),
            None => return s,
        };
    }
}

/// Mean and standard error of a sample.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}

/// Checks every property of a path system against direct computation.
pub fn check_path_system(m: &MatroidSpec, spec: &FairnessSpec, y: &ElementSet, p: &ElementSet) {
    let paths = generate_paths(m, spec, y, p).unwrap();
    let (cy, cp) = (counts(spec, y), counts(spec, p));
    let k: usize = cy.iter().zip(&cp).map(|(a, b)| b.saturating_sub(*a)).sum();
    assert_eq!(paths.len(), k);
    let augmenting = paths.iter().filter(|x| x.kind == PathKind::Augmenting).count();
    assert!(augmenting >= p.len() - y.len());

    let mut used = ElementSet::new();
    let mut per_color = vec![0usize; spec.num_colors()];
    for x in &paths {
        let xs = x.elements();
        assert_eq!(xs.len(), x.vertices.len(), "repeated vertex");
        assert!(used.is_disjoint(&xs), "paths overlap");
        used = used.union(&xs);
        // Vertices alternate P \ Y, Y \ P starting in P.
        for (i, &v) in x.vertices.iter().enumerate() {
            if i % 2 == 0 {
                assert!(p.contains(v) && !y.contains(v));
            } else {
                assert!(y.contains(v) && !p.contains(v));
            }
        }

        let next = apply_exchange(y, x);
        assert!(m.independent(&next), "{:?} breaks independence", x.vertices);
        assert!(spec.is_upper_fair(&next));
        let cn = counts(spec, &next);
        let up = spec.colors[x.vertices[0]];
        assert_eq!(x.increased, Some(up));
        assert!(cy[up] < cp[up], "increased color was not undersaturated");
        per_color[up] += 1;
        let down = match x.kind {
            PathKind::Augmenting => {
                assert_eq!(next.len(), y.len() + 1);
                assert_eq!(x.vertices.len() % 2, 1);
                None
            }
            PathKind::Alternating => {
                assert_eq!(next.len(), y.len());
                let d = spec.colors[*x.vertices.last().unwrap()];
                assert_eq!(x.decreased, Some(d));
                assert!(cy[d] > cp[d], "decreased color was not oversaturated");
                Some(d)
            }
        };
        for c in 0..spec.num_colors() {
            let expect = cy[c] + usize::from(c == up) - usize::from(Some(c) == down);
            assert_eq!(cn[c], expect);
        }
    }
    for c in 0..spec.num_colors() {
        assert_eq!(per_color[c], cp[c].saturating_sub(cy[c]));
    }
}

/// The partition-matroid decomposition against the general construction:
/// same count and per-color increases, and all of it applies at once.
pub fn check_fast_paths(m: &MatroidSpec, spec: &FairnessSpec, y: &ElementSet, p: &ElementSet) {
    let upper = spec.upper_matroid();
    let fast = fast_paths_partition(m, &upper, y, p).unwrap();
    let slow = generate_paths(m, spec, y, p).unwrap();
    assert_eq!(fast.len(), slow.len());
    let tally = |xs: &[ExchangeSet]| {
        let mut t = vec![0usize; spec.num_colors()];
        for x in xs {
            t[x.increased.unwrap()] += 1;
        }
        t
    };
    assert_eq!(tally(&fast), tally(&slow));
    let mut all = y.clone();
    for x in &fast {
        let single = apply_exchange(y, x);
        assert!(m.independent(&single) && upper.independent(&single));
        all = apply_exchange(&all, x);
    }
    assert!(m.independent(&all) && upper.independent(&all));
}

/// Size and value guarantees of the deterministic exchange, checked with
/// integer arithmetic for `epsilon = a / 10`. Returns the exchange count.
pub fn check_deterministic(ev: &mut Evaluator, m1: &MatroidSpec, m2: &MatroidSpec, a: usize) -> usize {
    let eps = a as f64 / 10.0;
    let rec = fair_matroid::algorithms::run_deterministic_two_matroids(ev, m1, m2, eps).unwrap();
    let n = rec.n_max.unwrap();
    let gap = rec.k_initial;
    let y0 = rec.y0_value.unwrap();
    assert!(m1.independent(&rec.solution) && m2.independent(&rec.solution));
    assert_eq!(n, fair_matroid::algorithms::max_card_intersection(m1, m2).unwrap().len());
    assert_eq!(rec.iterations, (10 - a) * gap / 10);
    assert_eq!(rec.size, n - gap + rec.iterations);
    assert!(10 * rec.size + 10 > (10 - a) * n, "size {} with N {n} at {eps}", rec.size);
    if gap > 0 {
        let bound = (gap - rec.iterations) as f64 / gap as f64 * y0;
        assert!(rec.f_value >= bound - 1e-9 * bound.abs().max(1.0));
    } else {
        assert!((rec.f_value - y0).abs() <= 1e-9 * y0.abs().max(1.0));
    }
    rec.iterations
}

/// For disjoint subsets `X_1..X_k` of `X`: `sum f(X \ X_i) >= (k - 1) f(X)`.
pub fn disjoint_removal_holds(rng: &mut ChaCha8Rng) -> bool {
    let n = rng.gen_range(1..=14);
    let f = random_valid_objective(rng, n);
    let ev = Evaluator::new(&f).unwrap();
    let x: ElementSet = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
    let k = rng.gen_range(1..=5);
    let mut parts = vec![ElementSet::new(); k];
    for &e in x.iter() {
        let slot = rng.gen_range(0..=k);
        if slot < k {
            parts[slot].insert(e);
        }
    }
    let fx = ev.evaluate(&x).unwrap();
    let lhs: f64 = parts.iter().map(|p| ev.evaluate(&x.minus(p)).unwrap()).sum();
    lhs >= (k as f64 - 1.0) * fx - 1e-9 * fx.abs().max(1.0)
}

/// Edges of a sparse random bipartite multigraph as two partition matroids,
/// one per side, with vertex capacities 1 or 2.
pub fn random_bipartite(rng: &mut ChaCha8Rng, edges: usize) -> (MatroidSpec, MatroidSpec) {
    let side = |rng: &mut ChaCha8Rng| rng.gen_range(edges / 3 + 1..=edges / 2 + 2);
    let (a, b) = (side(rng), side(rng));
    let left = (0..edges).map(|_| rng.gen_range(0..a)).collect();
    let right = (0..edges).map(|_| rng.gen_range(0..b)).collect();
    let cap = rng.gen_range(1..=2);
    (
        MatroidSpec::partition(left, vec![cap; a]).unwrap(),
        MatroidSpec::partition(right, vec![cap; b]).unwrap(),
    )
}
