//! Command-line front end: run configuration, subcommands and the CSV/JSON
//! writers. Exit codes are 0 on success, 1 for configuration or usage
//! errors and 2 for numerical or I/O failures.

mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{cmd_compare, cmd_hazard, cmd_redzone, cmd_scenario, cmd_simulate};
pub use config::{AnalysisConfig, PolicyConfig, PolicyKind, RunConfig, SCHEMA_VERSION};
pub use output::{CompareReport, EnsembleSummary, SimulateSummary};

#[derive(Debug, Parser)]
#[command(name = "redzone", version, about = "Failure-rate and maintenance-policy analysis for a redundant controller pair with one shelf spare")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-unit hazard curves: hardware, software, operator and their sum.
    Hazard(HazardArgs),
    /// Deterministic end-of-life timeline and its composed hazard curve.
    Scenario(ScenarioArgs),
    /// Monte Carlo ensemble under one policy; writes a JSON summary.
    Simulate(SimulateArgs),
    /// Replace-on-failure against rotation from the same seed.
    Compare(CompareArgs),
    /// Sweep of the lifetime spread against red-zone detection.
    Redzone(RedzoneArgs),
}

#[derive(Debug, Clone, Args)]
pub struct IoArgs {
    /// JSON run configuration; built-in defaults when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct EnsembleArgs {
    /// Master seed [default: simulation.master_seed = 42].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of replications [default: simulation.replications = 1000].
    #[arg(long)]
    pub replications: Option<usize>,
    /// Worker threads; output does not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct HazardArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Last grid time in weeks [default: th1 + th2 + th3].
    #[arg(long = "t-max")]
    pub t_max: Option<f64>,
    /// Grid spacing in weeks.
    #[arg(long, default_value_t = 1.0)]
    pub dt: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Only type1 has a deterministic timeline.
    #[arg(long, value_enum)]
    pub policy: Option<PolicyKind>,
    /// Last curve time in weeks [default: system death].
    #[arg(long = "t-max")]
    pub t_max: Option<f64>,
    /// Curve spacing in weeks [default: analysis.scenario_dt = 0.25].
    #[arg(long)]
    pub dt: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    /// Policy [default: policy.kind = type1].
    #[arg(long, value_enum)]
    pub policy: Option<PolicyKind>,
    /// Also write every trace's events to this CSV file.
    #[arg(long)]
    pub events: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RedzoneArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    /// Policy [default: policy.kind = type1].
    #[arg(long, value_enum)]
    pub policy: Option<PolicyKind>,
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Hazard(a) => cmd_hazard(a),
        Command::Scenario(a) => cmd_scenario(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Redzone(a) => cmd_redzone(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config_error() {
                1
            } else {
                2
            }
        }
    }
}
