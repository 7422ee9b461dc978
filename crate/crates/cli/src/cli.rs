use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::record::Method;

#[derive(Debug, Parser)]
#[command(
    name = "dipart",
    version,
    about = "Judicious bipartitions of digraphs: generators, partitioners, exact oracles"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Base seed for generators and randomized methods.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest n handed to the exhaustive oracle.
    #[arg(long, global = true, default_value_t = dipart_core::oracle::DEFAULT_ORACLE_LIMIT)]
    pub oracle_limit: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an instance and write it as an arc list plus a JSON sidecar.
    Generate(GenerateArgs),
    /// Partition a digraph and compare against the target bound.
    Partition(PartitionArgs),
    /// Exact optimum by exhaustive enumeration.
    Oracle(OracleArgs),
    /// Tight components of the underlying graph.
    Tight(TightArgs),
    /// Run a TOML/JSON experiment config and write CSV and JSON reports.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Family {
    RegularTournament,
    StarPlusEdge,
    ExtremalFamily,
    RandomDigraph,
    RandomMinSemidegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Links {
    None,
    Chain,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_enum, default_value = "none")]
    pub links: Links,
    /// Output arc-list path; the sidecar goes to `<out>.json`. Prints to stdout when omitted.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "pipeline")]
    pub method: Method,
    /// Degree parameter of the target bound (defaults to max(δ⁰, 1)).
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    /// Also compute the exact optimum when n is within the oracle limit.
    #[arg(long)]
    pub with_oracle: bool,
    /// Write the full pipeline trace to this path.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Where below-target findings are written.
    #[arg(long, default_value = "counterexamples")]
    pub counterexamples: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ObjectiveArg {
    MaxDicut,
    MaxMinDicut,
    MaxCut,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "max_min_dicut")]
    pub objective: ObjectiveArg,
}

#[derive(Debug, Args)]
pub struct TightArgs {
    pub input: PathBuf,
    /// Components up to this order are also checked against the definition.
    #[arg(long, default_value_t = dipart_core::tightness::DEFAULT_SIZE_LIMIT)]
    pub cross_check_limit: usize,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    pub config: PathBuf,
    #[arg(long, default_value = "experiment.csv")]
    pub csv: PathBuf,
    /// JSON report with every record and the per-family aggregates.
    #[arg(long, default_value = "experiment.json")]
    pub report: PathBuf,
    #[arg(long, default_value = "counterexamples")]
    pub counterexamples: PathBuf,
}
