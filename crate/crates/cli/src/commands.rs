use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use serde::Serialize;
use serde_json::json;

use dipart_core::digraph::{read_digraph, write_digraph};
use dipart_core::generators::{InstanceSpec, LinkSpec};
use dipart_core::oracle::{max_cut_exact, max_dicut_exact, max_min_dicut_exact};
use dipart_core::ratio;
use dipart_core::rng::RNG_NAME;
use dipart_core::tightness::count_tight_cross_checked;
use dipart_core::Digraph;

use crate::cli::{
    Cli, Command, ExperimentArgs, Family, GenerateArgs, GlobalArgs, Links, ObjectiveArg, OracleArgs, PartitionArgs,
    TightArgs,
};
use crate::experiment::{run_experiment, to_csv, ExperimentConfig};
use crate::record::{evaluate, oracle_value, persist, RunSettings, Subject, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
/// `partition` found a value below the target bound.
pub const EXIT_BELOW_TARGET: i32 = 2;

/// Dispatches a parsed command line and returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let g = &cli.global;
    match &cli.command {
        Command::Generate(a) => cmd_generate(g, a, out),
        Command::Partition(a) => cmd_partition(g, a, out),
        Command::Oracle(a) => cmd_oracle(g, a, out),
        Command::Tight(a) => cmd_tight(g, a, out),
        Command::Experiment(a) => cmd_experiment(g, a, out),
    }
}

fn read_input(path: &Path) -> Result<Digraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_digraph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: Family) -> Result<T> {
    v.ok_or_else(|| anyhow!("--{flag} is required for {family:?}"))
}

pub fn spec_from_args(a: &GenerateArgs, seed: u64) -> Result<InstanceSpec> {
    let f = a.family;
    Ok(match f {
        Family::RegularTournament => InstanceSpec::RegularTournament { n: need(a.n, "n", f)? },
        Family::StarPlusEdge => InstanceSpec::StarPlusEdge { n: need(a.n, "n", f)?, seed },
        Family::ExtremalFamily => InstanceSpec::ExtremalFamily {
            d: need(a.d, "d", f)?,
            k: need(a.k, "k", f)?,
            links: match a.links {
                Links::None => LinkSpec::None,
                Links::Chain => LinkSpec::Chain,
            },
        },
        Family::RandomDigraph => InstanceSpec::RandomDigraph { n: need(a.n, "n", f)?, p: need(a.p, "p", f)?, seed },
        Family::RandomMinSemidegree => InstanceSpec::RandomMinSemidegree {
            n: need(a.n, "n", f)?,
            d: need(a.d, "d", f)?,
            p: need(a.p, "p", f)?,
            seed,
        },
    })
}

fn cmd_generate(g: &GlobalArgs, a: &GenerateArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = spec_from_args(a, g.seed)?;
    let inst = spec.build().with_context(|| format!("building {}", spec.label()))?;
    let arcs = write_digraph(&inst.digraph);
    let sidecar = json!({
        "schema_version": SCHEMA_VERSION,
        "label": spec.label(),
        "spec": spec,
        "seed": g.seed,
        "rng": RNG_NAME,
        "n": inst.digraph.n(),
        "m": inst.digraph.m(),
        "notes": inst.notes,
    });
    match &a.out {
        Some(path) => {
            fs::write(path, &arcs).with_context(|| format!("writing {}", path.display()))?;
            let side = path.with_extension(match path.extension() {
                Some(e) => format!("{}.json", e.to_string_lossy()),
                None => "json".into(),
            });
            fs::write(&side, serde_json::to_string_pretty(&sidecar)?)
                .with_context(|| format!("writing {}", side.display()))?;
            if g.json {
                emit(out, &sidecar)?;
            } else {
                writeln!(
                    out,
                    "wrote {} (n={}, m={}) and {}",
                    path.display(),
                    inst.digraph.n(),
                    inst.digraph.m(),
                    side.display()
                )?;
            }
        }
        None => write!(out, "{arcs}")?,
    }
    Ok(EXIT_OK)
}

fn cmd_partition(g: &GlobalArgs, a: &PartitionArgs, out: &mut dyn Write) -> Result<i32> {
    let dg = read_input(&a.input)?;
    let settings = RunSettings {
        restarts: a.restarts,
        epsilon: a.epsilon,
        oracle_limit: g.oracle_limit,
        with_oracle: a.with_oracle,
    };
    let subject = Subject {
        label: a.input.display().to_string(),
        family: "file".into(),
        spec: None,
        digraph: &dg,
        d: a.d,
        oracle: oracle_value(&dg, &settings)?,
    };
    let mut eval = evaluate(&subject, a.method, g.seed, &settings)?;
    if let (Some(path), Some(p)) = (&a.trace, &eval.pipeline) {
        fs::write(path, serde_json::to_string_pretty(p)?).with_context(|| format!("writing {}", path.display()))?;
        eval.record.trace = Some(path.clone());
    }
    if !eval.record.meets_bound {
        eval.record.trace = Some(persist(&a.counterexamples, &eval, &dg)?);
    }
    let r = &eval.record;
    if g.json {
        emit(out, &json!({ "partition": r.partition, "record": r }))?;
    } else {
        writeln!(out, "partition: {}", r.partition)?;
        writeln!(
            out,
            "e12 = {}, e21 = {}, value = {}, target = {} (d = {}, m = {})",
            r.e12, r.e21, r.value, r.target.exact, r.d, r.m
        )?;
        if let Some(path) = &r.trace {
            writeln!(out, "trace: {}", path.display())?;
        }
        writeln!(out, "record: {}", serde_json::to_string(r)?)?;
    }
    Ok(if r.meets_bound { EXIT_OK } else { EXIT_BELOW_TARGET })
}

fn cmd_oracle(g: &GlobalArgs, a: &OracleArgs, out: &mut dyn Write) -> Result<i32> {
    let dg = read_input(&a.input)?;
    let res = match a.objective {
        ObjectiveArg::MaxDicut => max_dicut_exact(&dg, g.oracle_limit)?,
        ObjectiveArg::MaxMinDicut => max_min_dicut_exact(&dg, g.oracle_limit)?,
        ObjectiveArg::MaxCut => max_cut_exact(&dg.underlying_graph(), g.oracle_limit)?,
    };
    if g.json {
        emit(out, &json!({ "n": dg.n(), "m": dg.m(), "result": res }))?;
    } else {
        writeln!(out, "{}: {}", serde_json::to_value(res.objective)?.as_str().unwrap_or_default(), res.best_value)?;
        writeln!(out, "witness: {}", res.witness)?;
        writeln!(out, "explored: {}", res.explored)?;
    }
    Ok(EXIT_OK)
}

fn cmd_tight(g: &GlobalArgs, a: &TightArgs, out: &mut dyn Write) -> Result<i32> {
    let dg = read_input(&a.input)?;
    let report = count_tight_cross_checked(&dg.underlying_graph(), a.cross_check_limit);
    let disagreements = report.disagreements().count();
    if g.json {
        emit(out, &json!({ "report": report, "disagreements": disagreements }))?;
    } else {
        writeln!(out, "tau = {}", report.tau)?;
        writeln!(out, "lee bound = {}", ratio::display(&report.lee_bound))?;
        for c in &report.components {
            let check = match c.cross_check {
                Some(x) => format!(" (definition: {x})"),
                None => String::new(),
            };
            writeln!(out, "component {:?}: tight = {}{}", c.vertices, c.tight, check)?;
        }
        writeln!(out, "disagreements = {disagreements}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_experiment(g: &GlobalArgs, a: &ExperimentArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = ExperimentConfig::load(&a.config)?;
    let res = run_experiment(&cfg, &a.counterexamples)?;
    fs::write(&a.csv, to_csv(&res.records)?).with_context(|| format!("writing {}", a.csv.display()))?;
    fs::write(&a.report, serde_json::to_string_pretty(&res)?)
        .with_context(|| format!("writing {}", a.report.display()))?;
    if g.json {
        emit(
            out,
            &json!({ "rows": res.records.len(), "aggregates": res.aggregates, "counterexamples": res.counterexamples }),
        )?;
    } else {
        writeln!(out, "{} rows -> {}, report -> {}", res.records.len(), a.csv.display(), a.report.display())?;
        for ag in &res.aggregates {
            writeln!(
                out,
                "{:<24} {:<9} count={:<5} min_ratio={} mean_ratio={} below_target={}",
                ag.family,
                ag.method.as_str(),
                ag.count,
                ag.min_ratio.as_ref().map_or("-".into(), |r| r.exact.clone()),
                ag.mean_ratio.map_or("-".into(), |r| format!("{r:.4}")),
                ag.below_target
            )?;
        }
        if !res.counterexamples.is_empty() {
            writeln!(out, "{} counterexample file(s) in {}", res.counterexamples.len(), a.counterexamples.display())?;
        }
    }
    Ok(EXIT_OK)
}
