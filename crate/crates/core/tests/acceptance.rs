//! End-to-end acceptance checks. Prints one line per criterion and exits
//! nonzero if any of them fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use fair_matroid::algorithms::*;
use fair_matroid::harness::{gen_instance, sweep, AlgoSpec, GenParams, InstanceKind, SweepSpec};
use fair_matroid::{ElementSet, Evaluator, FairnessSpec, MatroidSpec, ObjectiveSpec};
use rand::Rng;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> String,
}

fn c1_matroid_axioms() -> String {
    let mut kinds = [0usize; 3];
    for seed in 0..200 {
        let mut rng = rng(seed);
        let n = rng.gen_range(0..=12);
        let m = random_matroid(&mut rng, n, 12);
        kinds[match m {
            MatroidSpec::Partition { .. } => 0,
            MatroidSpec::Uniform { .. } => 1,
            _ => 2,
        }] += 1;
        assert!(m.check_axioms(n).unwrap(), "seed {seed}");
    }
    assert!(kinds.iter().all(|&k| k > 20), "{kinds:?}");
    format!("200 matroids (partition/uniform/explicit = {kinds:?})")
}

fn c2_path_systems() -> String {
    let (mut done, mut paths, mut alternating) = (0, 0, 0);
    let mut seed = 0;
    while done < 1000 {
        seed += 1;
        let mut rng = rng(100_000 + seed);
        let n = rng.gen_range(1..=20);
        let m = random_matroid(&mut rng, n, 12);
        let spec = random_fairness(&mut rng, n, 5);
        let FairBase::Feasible(p) = build_fair_base(&m, &spec).unwrap() else { continue };
        let upper = spec.upper_matroid();
        let ms = [&m, &upper];
        let y = match rng.gen_range(0..3) {
            0 => random_common(&mut rng, &ms, n),
            1 => random_maximal(&mut rng, &ms, n),
            _ => color_biased_maximal(&mut rng, &ms, &spec),
        };
        check_path_system(&m, &spec, &y, &p);
        let xs = fair_matroid::exchange::generate_paths(&m, &spec, &y, &p).unwrap();
        paths += xs.len();
        alternating += xs.iter().filter(|x| !x.is_augmenting()).count();
        done += 1;
    }
    format!("1000 feasible instances, {paths} paths ({alternating} alternating)")
}

/// Five fixed instances on at most 40 elements, each with a positive
/// deficiency.
fn statistical_instances() -> Vec<(String, MatroidSpec, FairnessSpec, ObjectiveSpec)> {
    let mut out = Vec::new();
    for (kind, colors, r, seed) in [
        (InstanceKind::Coverage, 5, 8, 1),
        (InstanceKind::Clustering, 5, 20, 1),
        (InstanceKind::Recommender, 5, 20, 3),
    ] {
        let inst = gen_instance(&GenParams { kind, n: 40, colors, r, seed }).unwrap();
        out.push((format!("{kind}-40"), inst.matroid, inst.fairness, inst.objective));
    }
    // Heavy elements all in one color.
    let weights = vec![10.0, 10.0, 10.0, 10.0, 10.0, 10.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0];
    out.push((
        "heavy-color".into(),
        MatroidSpec::uniform(12, 6),
        FairnessSpec::new(vec![0, 0, 0, 0, 0, 0, 1, 1, 2, 2, 2, 2], vec![0, 1, 3], vec![6, 2, 4]).unwrap(),
        ObjectiveSpec::Linear { weights },
    ));
    // First random binary-matroid instance with deficiency at least 3.
    for seed in 0.. {
        let mut rng = rng(200_000 + seed);
        let m = random_binary(&mut rng, 12);
        let spec = random_fairness(&mut rng, 12, 4);
        let f = random_valid_objective(&mut rng, 12);
        let mut ev = Evaluator::new(&f).unwrap();
        if let Ok(prep) = prepare(&mut ev, &m, &spec) {
            if prep.k >= 3 {
                out.push((format!("binary-{seed}"), m, spec, f));
                break;
            }
        }
    }
    out
}

fn c3_statistics() -> String {
    let reps = 2000u64;
    let mut lines = Vec::new();
    for (name, m, spec, f) in statistical_instances() {
        let mut ev = Evaluator::new(&f).unwrap();
        let prep = prepare(&mut ev, &m, &spec).unwrap();
        assert!(prep.k >= 3, "{name}: deficiency {}", prep.k);
        let big_n = prep.p.len() as f64;
        let y0_fav = spec.fav(&prep.y0) as f64;
        for eps in [0.2, 0.5, 0.8] {
            let (mut sizes, mut values, mut favs) = (Vec::new(), Vec::new(), Vec::new());
            let mut per_color = vec![Vec::new(); spec.num_colors()];
            for seed in 0..reps {
                let mut cfg = RunConfig::new(Algorithm::Randomized, eps, seed);
                cfg.debug_verify = true;
                let rec = run_randomized_prepared(&mut ev, &m, &spec, &prep, &cfg).unwrap();
                // (a) and (f): exact.
                assert!(m.independent(&rec.solution) && spec.is_upper_fair(&rec.solution));
                let trace: Vec<usize> = (0..=rec.iterations).map(|i| prep.k - i).collect();
                assert_eq!(rec.k_trace, trace, "{name}");
                sizes.push(rec.size as f64);
                values.push(rec.f_value);
                favs.push(rec.fav as f64);
                for (c, &x) in counts(&spec, &rec.solution).iter().enumerate() {
                    per_color[c].push(x as f64);
                }
            }
            let slack = 1e-9;
            let (ms, se) = mean_se(&sizes);
            assert!(ms >= (1.0 - eps) * big_n - 3.0 * se - slack, "{name} eps {eps}: size {ms}");
            for (c, xs) in per_color.iter().enumerate() {
                let (mc, se) = mean_se(xs);
                let target = (1.0 - eps) * spec.lower[c] as f64;
                assert!(mc >= target - 3.0 * se - slack, "{name} eps {eps}: color {c} {mc} < {target}");
            }
            let (mf, se) = mean_se(&values);
            assert!(mf >= eps * prep.y0_value - 3.0 * se - slack, "{name} eps {eps}: f {mf}");
            let (mv, se) = mean_se(&favs);
            assert!(mv <= eps * y0_fav + 3.0 * se + slack, "{name} eps {eps}: fav {mv} vs {y0_fav}");
            if eps == 0.5 {
                lines.push(format!("{name}: k={} N={} mean|S|={ms:.2} mean fav={mv:.2}", prep.k, big_n));
            }
        }
    }
    format!("5 instances x 3 epsilons x {reps} runs; at eps 0.5: {}", lines.join("; "))
}

fn c4_deterministic() -> String {
    let mut gaps = 0;
    for seed in 0..200 {
        let mut rng = rng(300_000 + seed);
        let (n, m1, m2) = if seed % 4 != 3 {
            let n = rng.gen_range(8..=40);
            let (m1, m2) = random_bipartite(&mut rng, n);
            (n, m1, m2)
        } else {
            let n = rng.gen_range(1..=16);
            (n, random_matroid(&mut rng, n, 12), random_matroid(&mut rng, n, 12))
        };
        let f = random_valid_objective(&mut rng, n);
        let mut ev = Evaluator::new(&f).unwrap();
        let exchanges: usize = (1..=9).map(|a| check_deterministic(&mut ev, &m1, &m2, a)).sum();
        gaps += usize::from(exchanges > 0);
    }
    assert!(gaps >= 20, "only {gaps} instances exercise an exchange");
    format!("200 instances x 9 epsilons, {gaps} instances with an exchange")
}

fn c5_greedy_bound() -> String {
    let mut worst = f64::INFINITY;
    for seed in 0..300 {
        let mut rng = rng(400_000 + seed);
        let (m, spec, f) = random_instance(&mut rng, 1, 12);
        let mut ev = Evaluator::new(&f).unwrap();
        greedy_intersection(&mut ev, &m, &spec.upper_matroid()).unwrap();
        let opt = brute_force(&ev, &m, &spec).unwrap().opt_matint;
        assert!(ev.value() >= opt / 3.0 - 1e-9, "seed {seed}");
        if opt > 0.0 {
            worst = worst.min(ev.value() / opt);
        }
    }
    format!("300 instances, worst ratio {worst:.3}")
}

fn c6_fair_base() -> String {
    let mut infeasible = 0;
    for seed in 0..300 {
        let mut rng = rng(500_000 + seed);
        let (m, spec, f) = random_instance(&mut rng, 1, 12);
        let bf = brute_force(&Evaluator::new(&f).unwrap(), &m, &spec).unwrap();
        match build_fair_base(&m, &spec).unwrap() {
            FairBase::Feasible(p) => {
                assert!(bf.opt_fair.is_some(), "seed {seed}");
                assert!(m.independent(&p) && spec.fav(&p) == 0 && spec.is_upper_fair(&p));
                assert_eq!(p.len(), bf.n_max, "seed {seed}");
            }
            FairBase::Infeasible { .. } => {
                assert!(bf.opt_fair.is_none(), "seed {seed}");
                infeasible += 1;
            }
        }
    }
    format!("300 instances, {infeasible} infeasible")
}

fn c7_disjoint_removal() -> String {
    for seed in 0..10_000 {
        assert!(disjoint_removal_holds(&mut rng(600_000 + seed)), "seed {seed}");
    }
    "10000 triples".into()
}

fn c8_fast_paths() -> String {
    let mut nonempty = 0;
    for seed in 0..300 {
        let mut rng = rng(700_000 + seed);
        let n = rng.gen_range(1..=20);
        let m = random_partition(&mut rng, n);
        let spec = random_fairness(&mut rng, n, 5);
        let (y, p) = random_pair(&mut rng, &m, &spec);
        check_fast_paths(&m, &spec, &y, &p);
        nonempty += usize::from(spec.deficiency_k(&y, &p) > 0);
    }
    format!("300 partition instances, {nonempty} with positive deficiency")
}

fn c9_sweep() -> String {
    let algos: Vec<AlgoSpec> = ["our:0.2", "our:0.5", "our:0.8", "twopass", "lbmi", "ubmi", "random"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let spec = SweepSpec {
        kind: InstanceKind::Coverage,
        n: 2000,
        colors: InstanceKind::Coverage.default_colors(),
        algos,
        r_values: (10..=100).step_by(10).collect(),
        reps: 40,
        seed: 0,
        epsilon: 0.5,
        fast_paths: false,
        output: None,
    };
    let (rows, summary) = sweep(&spec).unwrap();
    assert_eq!(rows.len(), 7 * 10 * 40);
    let get = |algo: &str, r: usize| summary.iter().find(|s| s.algo == algo && s.r == r).unwrap();
    let mut inversions = 0;
    for &r in &spec.r_values {
        for s in [get("our:0.2", r), get("our:0.5", r), get("our:0.8", r), get("lbmi", r), get("ubmi", r)] {
            assert_eq!(s.count, 40, "{} r={r} has infeasible rows", s.algo);
        }
        let favs = [get("our:0.2", r).fav_mean, get("our:0.5", r).fav_mean, get("our:0.8", r).fav_mean];
        inversions += favs.windows(2).filter(|w| w[0] > w[1]).count();
        assert_eq!(get("lbmi", r).fav_mean, 0.0, "r={r}");
        assert!(get("ubmi", r).fav_mean >= favs[0], "r={r}");
        if r >= 50 {
            assert!(get("ubmi", r).f_mean >= get("lbmi", r).f_mean, "r={r}");
        }
    }
    assert!(inversions <= 1, "{inversions} inversions");
    let r = 50;
    format!(
        "{} rows, {inversions} inversions; r=50 fav our:0.2/0.5/0.8/ubmi = {:.1}/{:.1}/{:.1}/{:.1}, f lbmi/ubmi = {:.0}/{:.0}",
        rows.len(),
        get("our:0.2", r).fav_mean,
        get("our:0.5", r).fav_mean,
        get("our:0.8", r).fav_mean,
        get("ubmi", r).fav_mean,
        get("lbmi", r).f_mean,
        get("ubmi", r).f_mean
    )
}

fn c10_path_union() -> String {
    let big_n = 4;
    let (left, right, f) = three_edge_paths(big_n);
    let ev0 = Evaluator::new(&f).unwrap();
    // Best value per matching size over all 2^12 edge sets.
    let mut pareto = vec![None::<f64>; 3 * big_n + 1];
    for s in all_subsets(3 * big_n) {
        if left.independent(&s) && right.independent(&s) {
            let v = ev0.evaluate(&s).unwrap();
            let slot = &mut pareto[s.len()];
            *slot = Some(slot.map_or(v, |b: f64| b.max(v)));
        }
    }
    let n_max = pareto.iter().rposition(Option::is_some).unwrap();
    assert_eq!(n_max, 2 * big_n);
    let mut ev = Evaluator::new(&f).unwrap();
    let y0 = greedy_intersection(&mut ev, &left, &right).unwrap();
    let y0_size = y0.len();
    let middles: ElementSet = (0..big_n).map(|i| 3 * i + 1).collect();
    assert_eq!(y0, middles);
    let mut table = Vec::new();
    for a in 1..=9 {
        let eps = a as f64 / 10.0;
        let rec = run_deterministic_two_matroids(&mut ev, &left, &right, eps).unwrap();
        let expected_size = y0_size + (10 - a) * (n_max - y0_size) / 10;
        assert_eq!(rec.size, expected_size, "eps {eps}");
        assert_eq!(Some(rec.f_value), pareto[rec.size], "eps {eps}: off the frontier");
        table.push(format!("{eps}:({},{})", rec.size, rec.f_value));
    }
    table.join(" ")
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "matroid axioms", budget: Duration::from_secs(10), run: c1_matroid_axioms },
        Criterion { id: 2, name: "path system properties", budget: Duration::from_secs(60), run: c2_path_systems },
        Criterion { id: 3, name: "randomized exchange statistics", budget: Duration::from_secs(300), run: c3_statistics },
        Criterion { id: 4, name: "deterministic exchange bounds", budget: Duration::from_secs(60), run: c4_deterministic },
        Criterion { id: 5, name: "greedy third of optimum", budget: Duration::from_secs(120), run: c5_greedy_bound },
        Criterion { id: 6, name: "fair base against enumeration", budget: Duration::from_secs(120), run: c6_fair_base },
        Criterion { id: 7, name: "disjoint removal inequality", budget: Duration::from_secs(30), run: c7_disjoint_removal },
        Criterion { id: 8, name: "partition fast paths", budget: Duration::from_secs(60), run: c8_fast_paths },
        Criterion { id: 9, name: "coverage sweep trade-off", budget: Duration::from_secs(900), run: c9_sweep },
        Criterion { id: 10, name: "path union interpolation", budget: Duration::from_secs(5), run: c10_path_union },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let started = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.run));
        let elapsed = started.elapsed();
        let status = match &result {
            Ok(_) if elapsed <= c.budget => "PASS",
            _ => "FAIL",
        };
        let detail = match result {
            Ok(d) if elapsed <= c.budget => d,
            Ok(d) => format!("over time budget {:?}: {d}", c.budget),
            Err(e) => e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()),
        };
        failed += usize::from(status == "FAIL");
        println!("criterion {:>2} {status} [{:.2}s] {}: {detail}", c.id, elapsed.as_secs_f64(), c.name);
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
