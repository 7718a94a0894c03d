//! `sostrust` command-line runner.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a requirement witness
//! was found for a metric that must have none.

mod experiments;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use experiments::{CheckMetrics, EvalSimTrust, RunHybrid, RunTdg};
use run::{execute, Status, Sweep};

#[derive(Parser)]
#[command(
    name = "sostrust",
    version,
    about = "Trust metric checks, recommender evaluation and grid simulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Randomized R1/R2 checks of the continuous, weighted and WSES metrics.
    CheckMetrics(RunArgs),
    /// Tag-based trust vs item-overlap recommendation on a held-out corpus.
    EvalSimtrust(RunArgs),
    /// Desktop-grid attack scenario.
    RunTdg(RunArgs),
    /// Skill specialization loop and, optionally, audience-specific ratings.
    RunHybrid(RunArgs),
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// JSON config; built-in defaults when omitted.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory, created if absent.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
    /// Overrides the config's seed.
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Write into a non-empty output directory.
    #[arg(long)]
    pub force: bool,
    /// Run once per value, in parallel, each into its own subdirectory.
    /// KEY is a dotted config path, e.g. metric_config.alpha=0.5,0.9
    #[arg(long, value_name = "KEY=V1,V2,...")]
    pub sweep: Option<Sweep>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::CheckMetrics(a) => execute::<CheckMetrics>(a),
        Command::EvalSimtrust(a) => execute::<EvalSimTrust>(a),
        Command::RunTdg(a) => execute::<RunTdg>(a),
        Command::RunHybrid(a) => execute::<RunHybrid>(a),
    };
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Witness) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
