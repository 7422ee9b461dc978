//! One evaluated (instance, method, seed) cell and the files written for it.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use dipart_core::digraph::write_digraph;
use dipart_core::generators::InstanceSpec;
use dipart_core::oracle::max_min_dicut_exact;
use dipart_core::partition::{
    dense_partition, extend_partition, proof_pipeline, random_bipartition, target_bound, ExtendConfig, PipelineConfig,
    PipelineOutcome,
};
use dipart_core::ratio::{frac, int, Exact};
use dipart_core::{Bipartition, CutStats, Digraph, VertexSet};

/// Version of the JSON documents written by the harness.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Method {
    /// The staged pipeline.
    Pipeline,
    /// One uniformly random bipartition.
    Random,
    /// Best of randomized restarts with local search.
    Dense,
    /// Extension of the empty split over all vertices.
    Extend,
    /// Exhaustive optimum (small instances only).
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Pipeline => "pipeline",
            Method::Random => "random",
            Method::Dense => "dense",
            Method::Extend => "extend",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunSettings {
    pub restarts: usize,
    pub epsilon: f64,
    pub oracle_limit: usize,
    /// Also compute the exact optimum whenever `n ≤ oracle_limit`.
    pub with_oracle: bool,
}

impl Default for RunSettings {
    fn default() -> Self {
        RunSettings {
            restarts: 64,
            epsilon: 0.05,
            oracle_limit: dipart_core::oracle::DEFAULT_ORACLE_LIMIT,
            with_oracle: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub schema_version: u32,
    pub instance: String,
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<InstanceSpec>,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub min_out: usize,
    pub min_in: usize,
    pub method: Method,
    pub e12: usize,
    pub e21: usize,
    pub value: usize,
    pub target: Exact,
    /// `value/m`; absent when `m = 0`.
    pub ratio: Option<Exact>,
    pub oracle: Option<u64>,
    pub meets_bound: bool,
    pub partition: String,
    pub bookkeeping_ok: Option<bool>,
    /// Counterexample or trace file written for this cell.
    pub trace: Option<PathBuf>,
    pub time_ms: f64,
}

/// Everything produced by one evaluation.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub record: ExperimentRecord,
    pub partition: Bipartition,
    pub pipeline: Option<PipelineOutcome>,
}

/// Describes the instance being evaluated.
#[derive(Debug, Clone)]
pub struct Subject<'a> {
    pub label: String,
    pub family: String,
    pub spec: Option<InstanceSpec>,
    pub digraph: &'a Digraph,
    /// Degree parameter; `None` uses `max(δ⁰, 1)`.
    pub d: Option<usize>,
    /// Exact optimum, when already known.
    pub oracle: Option<u64>,
}

/// The exact max-min dicut when the settings ask for it and `n` is small enough.
pub fn oracle_value(dg: &Digraph, settings: &RunSettings) -> Result<Option<u64>> {
    if settings.with_oracle && dg.n() <= settings.oracle_limit {
        Ok(Some(max_min_dicut_exact(dg, settings.oracle_limit)?.best_value))
    } else {
        Ok(None)
    }
}

fn run_method(
    dg: &Digraph,
    method: Method,
    d: usize,
    seed: u64,
    settings: &RunSettings,
) -> Result<(Bipartition, CutStats, Option<PipelineOutcome>)> {
    let n = dg.n();
    Ok(match method {
        Method::Pipeline => {
            let cfg = PipelineConfig {
                d: Some(d),
                restarts: settings.restarts,
                epsilon: settings.epsilon,
                ..Default::default()
            };
            let out = proof_pipeline(dg, seed, &cfg)?;
            (out.partition.clone(), out.stats, Some(out))
        }
        Method::Random => {
            let p = random_bipartition(dg, &vec![None; n], seed)?;
            let s = dg.cut_stats(&p)?;
            (p, s, None)
        }
        Method::Dense => {
            let out = dense_partition(dg, settings.epsilon, settings.restarts, seed)?;
            (out.partition, out.stats, None)
        }
        Method::Extend => {
            let cfg =
                ExtendConfig { restarts: settings.restarts, seed, epsilon: settings.epsilon, degree_threshold: None };
            let empty = VertexSet::empty(n);
            let out = extend_partition(dg, &empty, &empty, &cfg)?;
            (out.partition, out.stats, None)
        }
        Method::Oracle => {
            let out = max_min_dicut_exact(dg, settings.oracle_limit)?;
            let s = dg.cut_stats(&out.witness)?;
            (out.witness, s, None)
        }
    })
}

/// Runs `method` on the subject and fills in a record. Nothing is written to
/// disk here.
pub fn evaluate(subject: &Subject<'_>, method: Method, seed: u64, settings: &RunSettings) -> Result<Evaluation> {
    let dg = subject.digraph;
    let deg = dg.degrees();
    let d = subject.d.unwrap_or_else(|| dg.min_semidegree().max(1));
    let start = Instant::now();
    let (partition, stats, pipeline) = run_method(dg, method, d, seed, settings)
        .with_context(|| format!("{} on {}", method.as_str(), subject.label))?;
    let time_ms = start.elapsed().as_secs_f64() * 1e3;
    let oracle = if method == Method::Oracle { Some(stats.value as u64) } else { subject.oracle };
    let target = target_bound(d, dg.m())?;
    let meets_bound = int(stats.value as u64) >= target;
    let ratio = (dg.m() > 0).then(|| Exact::from(&frac(stats.value as u64, dg.m() as u64)));
    let record = ExperimentRecord {
        schema_version: SCHEMA_VERSION,
        instance: subject.label.clone(),
        family: subject.family.clone(),
        spec: subject.spec.clone(),
        seed,
        n: dg.n(),
        m: dg.m(),
        d,
        min_out: deg.min_out,
        min_in: deg.min_in,
        method,
        e12: stats.e12,
        e21: stats.e21,
        value: stats.value,
        target: Exact::from(&target),
        ratio,
        oracle,
        meets_bound,
        partition: partition.to_string(),
        bookkeeping_ok: pipeline.as_ref().map(|p| p.state.bookkeeping_ok()),
        trace: None,
        time_ms,
    };
    debug_assert!(record.oracle.is_none_or(|o| record.value as u64 <= o));
    Ok(Evaluation { record, partition, pipeline })
}

#[derive(Serialize)]
struct Counterexample<'a> {
    schema_version: u32,
    record: &'a ExperimentRecord,
    digraph: String,
    partition: &'a Bipartition,
    trace: Option<&'a PipelineOutcome>,
}

fn slug(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if c.is_ascii_alphanumeric() || c == '.' || c == '-' {
            out.push(c);
        } else if !out.ends_with('_') {
            out.push('_');
        }
    }
    out.trim_matches('_').chars().take(120).collect()
}

/// Writes the instance, partition, record and pipeline trace to one JSON file
/// in `dir` and returns its path.
pub fn persist(dir: &Path, eval: &Evaluation, digraph: &Digraph) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let r = &eval.record;
    let name = format!("{}__{}__seed{}.json", slug(&r.instance), r.method.as_str(), r.seed);
    let path = dir.join(name);
    let doc = Counterexample {
        schema_version: SCHEMA_VERSION,
        record: r,
        digraph: write_digraph(digraph),
        partition: &eval.partition,
        trace: eval.pipeline.as_ref(),
    };
    fs::write(&path, serde_json::to_string_pretty(&doc)?).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}
