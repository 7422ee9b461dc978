//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use dipart_cli::experiment::{run_experiment, to_csv, without_timing, ExperimentConfig, Sweep};
use dipart_cli::{ExperimentRecord, Method, RunSettings};
use dipart_core::generators::{random_digraph, regular_tournament};
use dipart_core::oracle::{directed_edwards_bound, edwards_bound, max_cut_exact, max_dicut_exact};
use dipart_core::partition::{azuma_tail, gap, minimize_gap, random_bipartition, target_bound};
use dipart_core::ratio::{frac, int};
use dipart_core::rng;
use dipart_core::tightness::{
    count_tight, is_tight_by_blocks, is_tight_by_definition, lee_bound, weighted_profile_bound, DegreeProfile,
};
use dipart_core::{UGraph, VertexSet};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn tightness_equivalence() -> Verdict {
    let start = Instant::now();
    let (mut graphs, mut disagreements) = (0u64, 0u64);
    for n in 1..=7usize {
        let pairs = n * (n - 1) / 2;
        let (g, d) = (0..1u64 << pairs)
            .into_par_iter()
            .map(|mask| {
                let g = UGraph::from_pair_mask(n, mask);
                if !g.is_connected() {
                    return (0, 0);
                }
                let all: Vec<usize> = (0..n).collect();
                let a = is_tight_by_blocks(&g, &all).unwrap();
                let b = is_tight_by_definition(&g, &all, 7).unwrap();
                (1, u64::from(a != b))
            })
            .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
        graphs += g;
        disagreements += d;
    }
    let t = start.elapsed();
    // labelled connected graphs on 1..=7 vertices: 1+1+4+38+728+26704+1866256
    let pass = disagreements == 0 && graphs == 1_893_732 && t < Duration::from_secs(120);
    verdict(pass, format!("{graphs} labelled connected graphs, {disagreements} disagreements, {}", secs(t)))
}

fn random_graph(n: usize, p: f64, seed: u64) -> UGraph {
    let mut r = rng::stream(seed, 0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    UGraph::from_edges(n, edges).unwrap()
}

fn lee_bound_on_random_graphs() -> Verdict {
    let ps = [0.02, 0.05, 0.1];
    let violations: usize = (0..1000u64)
        .into_par_iter()
        .filter(|&i| {
            let n = 1 + (rng::derive(2, i) % 60) as usize;
            let g = random_graph(n, ps[(i % 3) as usize], rng::derive(3, i));
            let r = count_tight(&g);
            int(r.tau as u64) > lee_bound(&DegreeProfile::of_graph(&g))
        })
        .count();
    verdict(violations == 0, format!("1000 graphs, n ≤ 60, p ∈ {{0.02, 0.05, 0.1}}, {violations} violations"))
}

fn weighted_profile_bound_on_random_tuples() -> Verdict {
    let results: Vec<(bool, bool)> = (0..10_000u64)
        .into_par_iter()
        .map(|i| {
            let mut r = rng::stream(4, i);
            let n: u64 = r.gen_range(0..=60);
            let delta: u64 = r.gen_range(1..=12);
            let alpha: u64 = r.gen_range(0..delta);
            let g = delta - alpha;
            let len = r.gen_range(1..=(2 * g + 4) as usize);
            let mut counts = vec![0u64; len];
            let mut left = r.gen_range(0..=n);
            while left > 0 {
                // skewed towards low degrees, where the bound is tight
                let j = r.gen_range(0..len).min(r.gen_range(0..len));
                let c = r.gen_range(1..=left);
                counts[j] += c;
                left -= c;
            }
            let profile = DegreeProfile::new(counts);
            let weighted: u64 = (0..g).map(|j| (g - j) * profile.get(j as usize)).sum();
            let rho = int(weighted) + frac(r.gen_range(0..=6u64), 2);
            let h = weighted_profile_bound(n, &rho, alpha, delta, &profile).unwrap();
            (h.hypotheses_hold, h.satisfied == Some(true))
        })
        .collect();
    let bad_hyp = results.iter().filter(|r| !r.0).count();
    let violations = results.iter().filter(|r| r.0 && !r.1).count();
    verdict(
        bad_hyp == 0 && violations == 0,
        format!("10000 tuples, {bad_hyp} outside hypotheses, {violations} violations"),
    )
}

fn gap_minimizer() -> Verdict {
    let failures: Vec<String> = (0..1000u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut r = rng::stream(5, i);
            let k: usize = r.gen_range(1..=20);
            let n = k + r.gen_range(1..=60usize);
            let p: f64 = r.gen_range(0.02..0.5);
            let x = VertexSet::from_vertices(n, 0..k).unwrap();
            let y = x.complement();
            let d = random_digraph(n, p, rng::derive(6, i)).unwrap().without_arcs_inside(&x).unwrap();
            match minimize_gap(&d, &x, &y, None, 20) {
                Ok(gp) => {
                    let recomputed = gap(&d, &gp.x1_set(n), &gp.x2_set(n)).unwrap();
                    (recomputed != gp.theta || gp.theta.unsigned_abs() as usize > y.len())
                        .then(|| format!("instance {i}: θ={} |Y|={}", gp.theta, y.len()))
                }
                Err(e) => Some(format!("instance {i}: {e}")),
            }
        })
        .collect();
    let first = failures.first().map_or(String::new(), |f| format!(" (first: {f})"));
    verdict(failures.is_empty(), format!("1000 instances, |X| ≤ 20, {} failures{first}", failures.len()))
}

fn directed_edwards() -> Verdict {
    let start = Instant::now();
    let mut values = Vec::new();
    let mut pass = true;
    for n in [3usize, 5, 7, 9] {
        let t = regular_tournament(n).unwrap();
        let best = max_dicut_exact(&t, 24).unwrap().best_value;
        pass &= best == directed_edwards_bound(t.m()).floor() as u64;
        values.push(best);
    }
    pass &= values == [1, 3, 6, 10];
    let violations = (0..200u64)
        .into_par_iter()
        .filter(|&i| {
            let n = 1 + (rng::derive(7, i) % 10) as usize;
            let p = [0.1, 0.3, 0.5, 0.8][(i % 4) as usize];
            let d = random_digraph(n, p, rng::derive(8, i)).unwrap();
            (max_dicut_exact(&d, 24).unwrap().best_value as f64) < directed_edwards_bound(d.m()) - 1e-9
        })
        .count();
    let t = start.elapsed();
    pass &= violations == 0 && t < Duration::from_secs(60);
    verdict(
        pass,
        format!("tournaments n=3,5,7,9 → {values:?}; 200 random digraphs, {violations} violations, {}", secs(t)),
    )
}

fn edwards_on_odd_cliques() -> Verdict {
    let mut pass = true;
    let mut got = Vec::new();
    for n in [3usize, 5, 7] {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        let k = UGraph::from_edges(n, edges).unwrap();
        let best = max_cut_exact(&k, 24).unwrap().best_value;
        let bound = edwards_bound(k.m());
        pass &= (best as f64 - bound).abs() < 1e-9;
        got.push((best, bound));
    }
    verdict(pass, format!("(max cut, bound) for K3, K5, K7: {got:?}"))
}

fn azuma_tail_check() -> Verdict {
    let d = random_digraph(60, 0.1, 2024).unwrap();
    let c: Vec<f64> = (0..d.n()).map(|v| d.degree(v) as f64).collect();
    let mean = d.m() as f64 / 4.0;
    let samples: Vec<f64> = (0..10_000u64)
        .into_par_iter()
        .map(|s| {
            let p = random_bipartition(&d, &vec![None; d.n()], s).unwrap();
            d.cut_stats(&p).unwrap().e12 as f64
        })
        .collect();
    let mut pass = true;
    let mut rows = Vec::new();
    for z in [2.0, 5.0, 10.0, 20.0, 40.0] {
        let freq = samples.iter().filter(|&&x| x <= mean - z).count() as f64 / samples.len() as f64;
        let bound = azuma_tail(z, &c).unwrap().bound;
        pass &= freq <= bound + 0.02;
        rows.push(format!("z={z}: {freq:.4} ≤ {bound:.4}"));
    }
    verdict(pass, format!("m={}, 10000 seeds; {}", d.m(), rows.join(", ")))
}

struct DeskScale {
    small: Vec<ExperimentRecord>,
    large: Vec<ExperimentRecord>,
    counterexamples: Vec<PathBuf>,
    elapsed: Duration,
}

fn desk_scale_configs() -> Vec<(bool, ExperimentConfig)> {
    let mut out = Vec::new();
    for d in [2usize, 3, 4] {
        for (small, n, seed) in [(true, [12, 16], 100 + d as u64), (false, [30, 60], 200 + d as u64)] {
            out.push((
                small,
                ExperimentConfig {
                    name: Some(format!("d{d}-{}", if small { "small" } else { "large" })),
                    sweeps: vec![Sweep { count: 200, n, d, p: [0.05, 0.3], seed }],
                    methods: vec![Method::Pipeline],
                    seeds: vec![0],
                    settings: RunSettings { with_oracle: small, ..Default::default() },
                    ..Default::default()
                },
            ));
        }
    }
    out
}

fn run_desk_scale(dir: &Path) -> DeskScale {
    let start = Instant::now();
    let mut res =
        DeskScale { small: Vec::new(), large: Vec::new(), counterexamples: Vec::new(), elapsed: Duration::ZERO };
    for (small, cfg) in desk_scale_configs() {
        let out = run_experiment(&cfg, dir).expect("experiment runs");
        res.counterexamples.extend(out.counterexamples);
        if small {
            res.small.extend(out.records)
        } else {
            res.large.extend(out.records)
        }
    }
    res.elapsed = start.elapsed();
    res
}

fn target_of(r: &ExperimentRecord) -> dipart_core::Rational {
    target_bound(r.d, r.m).unwrap()
}

fn desk_scale_bound(run: &DeskScale) -> Verdict {
    let oracle_violations: Vec<&ExperimentRecord> = run
        .small
        .iter()
        .filter(|r| int(r.oracle.expect("small instances have an oracle value")) < target_of(r))
        .collect();
    let unpersisted = oracle_violations.iter().filter(|r| r.trace.as_ref().is_none_or(|p| !p.exists())).count();
    let pipeline_short = run.large.iter().filter(|r| int(10 * r.value as u64) < int(9u64) * target_of(r)).count();
    let below_target = run.large.iter().filter(|r| !r.meets_bound).count();
    let min_small = run.small.iter().filter(|r| r.m > 0).map(|r| frac(r.oracle.unwrap(), r.m as u64)).min();
    let pass = unpersisted == 0 && pipeline_short == 0 && run.elapsed < Duration::from_secs(900);
    verdict(
        pass,
        format!(
            "{} small (oracle min ratio {}), {} oracle counterexamples ({} unpersisted); {} large, {} below 0.9·target, {} below target; {} counterexample files; {}",
            run.small.len(),
            min_small.map_or("-".into(), |r| dipart_core::ratio::display(&r)),
            oracle_violations.len(),
            unpersisted,
            run.large.len(),
            pipeline_short,
            below_target,
            run.counterexamples.len(),
            secs(run.elapsed)
        ),
    )
}

fn bookkeeping(run: &DeskScale) -> Verdict {
    let all: Vec<&ExperimentRecord> = run.small.iter().chain(&run.large).collect();
    let bad = all.iter().filter(|r| r.bookkeeping_ok != Some(true)).count();
    verdict(bad == 0, format!("{} pipeline runs, {bad} violations of m = m₁ + m₂ or m₁ ≥ αθ + ρ", all.len()))
}

fn determinism(first: &DeskScale, dir: &Path) -> Verdict {
    let second = run_desk_scale(dir);
    let csv = |r: &DeskScale| {
        let rows: Vec<ExperimentRecord> = r.small.iter().chain(&r.large).cloned().collect();
        without_timing(&to_csv(&rows).unwrap())
    };
    let (a, b) = (csv(first), csv(&second));
    let differing = a.lines().zip(b.lines()).filter(|(x, y)| x != y).count();
    verdict(a == b, format!("{} rows compared, {differing} differ", a.lines().count().saturating_sub(1)))
}

fn main() -> ExitCode {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance-counterexamples");
    let _ = std::fs::remove_dir_all(&dir);
    let mut all_pass = true;
    let mut report = |id: u32, name: &str, v: Verdict| {
        all_pass &= v.pass;
        println!("{} [{id:>2}] {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    };
    report(1, "tightness: block test equals matching definition", tightness_equivalence());
    report(2, "tight components vs odd-degree-weighted count", lee_bound_on_random_graphs());
    report(3, "tight components vs (n+ρ)/(δ−α+1)", weighted_profile_bound_on_random_tuples());
    report(4, "gap minimizer reaches |θ| ≤ |Y|", gap_minimizer());
    report(5, "directed Edwards bound", directed_edwards());
    report(6, "Edwards bound on odd cliques", edwards_on_odd_cliques());
    report(7, "Azuma tail vs empirical frequency", azuma_tail_check());
    let run = run_desk_scale(&dir);
    report(8, "desk-scale target bound", desk_scale_bound(&run));
    report(9, "pipeline bookkeeping", bookkeeping(&run));
    report(10, "experiment determinism", determinism(&run, &dir));
    println!("counterexamples (if any): {}", dir.display());
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
