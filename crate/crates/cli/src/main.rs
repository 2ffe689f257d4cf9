use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use reboot_cli::config::{parse_policies, ExperimentConfig, Overrides, Plan};
use reboot_cli::{bench, report, runner, CliError};

/// Bandit simulations with residual-bootstrap exploration: run experiment
/// presets to CSV, time policies, and evaluate the regret-bound constants.
#[derive(Parser)]
#[command(name = "reboot", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a config (preset or explicit experiments) and write CSV output.
    Run {
        /// Path to a JSON config file.
        #[arg(long)]
        config: PathBuf,
        /// Override the number of runs per policy.
        #[arg(long)]
        runs: Option<usize>,
        /// Override the master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time policies on a fixed Gaussian instance (median episode seconds).
    Bench {
        /// Number of arms.
        #[arg(long)]
        arms: usize,
        /// Rounds per episode.
        #[arg(long)]
        horizon: usize,
        /// Comma-separated policies, e.g. `ts,giro,phe=2.1,reboot=1.5`.
        #[arg(long)]
        policies: String,
        /// Repetitions per policy (median is reported).
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
    /// Evaluate the regret-bound constants, thresholds, and tail checks.
    Theory {
        /// Exploration aid unit (must exceed 1.5 for the bound).
        #[arg(long = "sigma-a")]
        sigma_a: f64,
        /// Horizon T the bound is evaluated at.
        #[arg(long)]
        horizon: f64,
        /// Suboptimality gap of the single suboptimal arm.
        #[arg(long)]
        gap: f64,
        /// Emit the report as JSON instead of the table.
        #[arg(long)]
        json: bool,
    },
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run {
            config,
            runs,
            seed,
            out,
        } => {
            let text = fs::read_to_string(&config).map_err(|e| {
                CliError::Config(format!("cannot read config {}: {e}", config.display()))
            })?;
            let plan: Plan =
                ExperimentConfig::from_json(&text)?.resolve(&Overrides { runs, seed, out })?;
            let rendered = runner::execute(&plan)?;
            print!("{rendered}");
        }
        Command::Bench {
            arms,
            horizon,
            policies,
            reps,
        } => {
            if reps == 0 {
                return Err(CliError::Config("--reps must be at least 1".into()));
            }
            let policies = parse_policies(&policies)?;
            let grid = [(arms, horizon)];
            let rows = bench::run_grid(&grid, &policies, reps)?;
            print!("{}", bench::render_table(&grid, &policies, &rows));
        }
        Command::Theory {
            sigma_a,
            horizon,
            gap,
            json,
        } => {
            let rep = reboot_core::theory::report(sigma_a, horizon, gap)?;
            if json {
                println!("{}", report::render_json(&rep)?);
            } else {
                print!("{}", report::render_human(&rep));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
