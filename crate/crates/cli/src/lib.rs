//! Command-line front end and experiment harness for `dipart-core`.
//!
//! The binary is a thin wrapper around [`commands::run`]; everything is
//! exposed here so the harness can be driven from tests.

pub mod cli;
pub mod commands;
pub mod experiment;
pub mod record;

pub use cli::Cli;
pub use experiment::{run_experiment, to_csv, ExperimentConfig, ExperimentOutput};
pub use record::{evaluate, ExperimentRecord, Method, RunSettings, Subject};
