//! Config-driven experiments: specs × methods × seeds, CSV and JSON reports.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use dipart_core::generators::{Instance, InstanceSpec};
use dipart_core::ratio::{self, frac, Exact};
use dipart_core::rng;

use crate::record::{evaluate, oracle_value, persist, ExperimentRecord, Method, RunSettings, Subject, SCHEMA_VERSION};

/// CSV header, in column order. `time_ms` is last so that it can be dropped
/// when comparing runs.
pub const CSV_COLUMNS: [&str; 20] = [
    "instance",
    "family",
    "n",
    "m",
    "d",
    "min_out",
    "min_in",
    "method",
    "seed",
    "e12",
    "e21",
    "value",
    "bound",
    "bound_decimal",
    "ratio",
    "ratio_decimal",
    "oracle",
    "meets_bound",
    "bookkeeping_ok",
    "time_ms",
];

/// A batch of `random_min_semidegree` instances with `n` and `p` drawn
/// uniformly from inclusive ranges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub count: usize,
    pub n: [usize; 2],
    pub d: usize,
    pub p: [f64; 2],
    pub seed: u64,
}

impl Sweep {
    pub fn expand(&self) -> Result<Vec<InstanceSpec>> {
        let [n0, n1] = self.n;
        let [p0, p1] = self.p;
        if n0 > n1 || !(0.0..=1.0).contains(&p0) || !(0.0..=1.0).contains(&p1) || p0 > p1 {
            bail!("invalid sweep ranges n={:?} p={:?}", self.n, self.p);
        }
        Ok((0..self.count as u64)
            .map(|i| {
                let n = n0 + (rng::derive(self.seed, 3 * i) % (n1 - n0 + 1) as u64) as usize;
                let u = (rng::derive(self.seed, 3 * i + 1) >> 11) as f64 / (1u64 << 53) as f64;
                // three decimals keep labels short and exactly reproducible
                let p = ((p0 + u * (p1 - p0)) * 1000.0).round() / 1000.0;
                let seed = rng::derive(self.seed, 3 * i + 2);
                InstanceSpec::RandomMinSemidegree { n, d: self.d, p, seed }
            })
            .collect())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: Option<String>,
    pub specs: Vec<InstanceSpec>,
    pub sweeps: Vec<Sweep>,
    pub methods: Vec<Method>,
    pub seeds: Vec<u64>,
    /// Degree parameter for every cell; otherwise the spec's own `d` when it
    /// has one, else `max(δ⁰, 1)`.
    pub d: Option<usize>,
    pub settings: RunSettings,
}

impl ExperimentConfig {
    /// Reads TOML or JSON, chosen by extension (TOML otherwise).
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let cfg = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        } else {
            toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        };
        Ok(cfg)
    }

    pub fn all_specs(&self) -> Result<Vec<InstanceSpec>> {
        let mut specs = self.specs.clone();
        for s in &self.sweeps {
            specs.extend(s.expand()?);
        }
        Ok(specs)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub family: String,
    pub method: Method,
    pub count: usize,
    pub min_ratio: Option<Exact>,
    pub mean_ratio: Option<f64>,
    pub below_target: usize,
    pub oracle_below_target: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentOutput {
    pub schema_version: u32,
    pub name: Option<String>,
    pub settings: RunSettings,
    pub records: Vec<ExperimentRecord>,
    pub aggregates: Vec<Aggregate>,
    /// Files written for below-target cells.
    pub counterexamples: Vec<PathBuf>,
}

fn spec_d(spec: &InstanceSpec) -> Option<usize> {
    match spec {
        InstanceSpec::RandomMinSemidegree { d, .. } => Some(*d),
        _ => None,
    }
}

/// Runs every cell. Rows come out spec-major, then method, then seed, whatever
/// order the workers finish in. Below-target cells are written to
/// `counterexample_dir`.
pub fn run_experiment(cfg: &ExperimentConfig, counterexample_dir: &Path) -> Result<ExperimentOutput> {
    let specs = cfg.all_specs()?;
    let settings = &cfg.settings;
    let instances: Vec<(Instance, Option<u64>)> = specs
        .par_iter()
        .map(|s| {
            let inst = s.build().with_context(|| format!("building {}", s.label()))?;
            let oracle = oracle_value(&inst.digraph, settings)?;
            Ok((inst, oracle))
        })
        .collect::<Result<_>>()?;
    let cells: Vec<(usize, Method, u64)> = (0..instances.len())
        .flat_map(|i| cfg.methods.iter().flat_map(move |&m| cfg.seeds.iter().map(move |&s| (i, m, s))))
        .collect();
    let evaluated: Vec<(ExperimentRecord, Option<PathBuf>)> = cells
        .par_iter()
        .map(|&(i, method, seed)| {
            let (inst, oracle) = &instances[i];
            let subject = Subject {
                label: inst.spec.label(),
                family: inst.spec.family().to_string(),
                spec: Some(inst.spec.clone()),
                digraph: &inst.digraph,
                d: cfg.d.or_else(|| spec_d(&inst.spec)),
                oracle: *oracle,
            };
            let mut eval = evaluate(&subject, method, seed, settings)?;
            let mut written = None;
            if !eval.record.meets_bound {
                let path = persist(counterexample_dir, &eval, &inst.digraph)?;
                eval.record.trace = Some(path.clone());
                written = Some(path);
            }
            Ok((eval.record, written))
        })
        .collect::<Result<_>>()?;
    let counterexamples = evaluated.iter().filter_map(|(_, p)| p.clone()).collect();
    let records: Vec<ExperimentRecord> = evaluated.into_iter().map(|(r, _)| r).collect();
    let aggregates = aggregate(&records);
    Ok(ExperimentOutput {
        schema_version: SCHEMA_VERSION,
        name: cfg.name.clone(),
        settings: settings.clone(),
        records,
        aggregates,
        counterexamples,
    })
}

/// Per (family, method) summary in first-appearance order.
pub fn aggregate(records: &[ExperimentRecord]) -> Vec<Aggregate> {
    let mut keys: Vec<(String, Method)> = Vec::new();
    for r in records {
        let k = (r.family.clone(), r.method);
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys.into_iter()
        .map(|(family, method)| {
            let rows: Vec<&ExperimentRecord> =
                records.iter().filter(|r| r.family == family && r.method == method).collect();
            let ratios: Vec<_> = rows.iter().filter(|r| r.m > 0).map(|r| frac(r.value as u64, r.m as u64)).collect();
            let min_ratio = ratios.iter().min().map(Exact::from);
            let mean_ratio =
                (!ratios.is_empty()).then(|| ratios.iter().map(ratio::to_f64).sum::<f64>() / ratios.len() as f64);
            let below_target = rows.iter().filter(|r| !r.meets_bound).count();
            let oracle_below_target =
                rows.iter().filter(|r| r.oracle.is_some_and(|o| ratio::int(o) < parse_exact(&r.target))).count();
            Aggregate { family, method, count: rows.len(), min_ratio, mean_ratio, below_target, oracle_below_target }
        })
        .collect()
}

fn parse_exact(e: &Exact) -> dipart_core::Rational {
    e.exact.parse().expect("exact strings are written by `ratio::display`")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

/// Renders records as CSV with the fixed [`CSV_COLUMNS`] header.
pub fn to_csv(records: &[ExperimentRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS)?;
    for r in records {
        w.write_record([
            r.instance.clone(),
            r.family.clone(),
            r.n.to_string(),
            r.m.to_string(),
            r.d.to_string(),
            r.min_out.to_string(),
            r.min_in.to_string(),
            r.method.as_str().to_string(),
            r.seed.to_string(),
            r.e12.to_string(),
            r.e21.to_string(),
            r.value.to_string(),
            r.target.exact.clone(),
            format!("{:.6}", r.target.approx),
            opt(&r.ratio.as_ref().map(|x| x.exact.clone())),
            opt(&r.ratio.as_ref().map(|x| format!("{:.6}", x.approx))),
            opt(&r.oracle),
            r.meets_bound.to_string(),
            opt(&r.bookkeeping_ok),
            format!("{:.3}", r.time_ms),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Drops the trailing timing column from every CSV line.
pub fn without_timing(csv_text: &str) -> String {
    csv_text.lines().map(|l| l.rsplit_once(',').map_or(l, |(head, _)| head)).collect::<Vec<_>>().join("\n")
}
