use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod failure;
mod instance;

use config::{GenerateConfig, GeneratorName, Overrides, RunConfig};
use failure::CliResult;

/// Streaming ground-set pruning for budgeted submodular maximization.
#[derive(Debug, Parser)]
#[command(name = "quickprune", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Prune the ground set; writes pruned.txt and report.json.
    Prune {
        #[command(flatten)]
        run: Overrides,
        #[arg(short, long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the constraint's greedy heuristic and print the solution as JSON.
    Solve {
        #[command(flatten)]
        run: Overrides,
        /// Restrict the ground set to the ids in this file.
        #[arg(long)]
        pruned: Option<PathBuf>,
        /// Defaults to kappa_max.
        #[arg(long)]
        budget: Option<f64>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compare heuristic value on pruned sets against the full set per budget.
    Eval {
        #[command(flatten)]
        run: Overrides,
        /// Id file from `prune`; repeat for several pruners.
        #[arg(long, required = true)]
        pruned: Vec<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// JSON lines instead of CSV.
        #[arg(long)]
        jsonl: bool,
    },
    /// Prune with each configured pruner once, then evaluate every budget.
    Sweep {
        #[command(flatten)]
        run: Overrides,
        #[arg(short, long, default_value = ".")]
        out: PathBuf,
    },
    /// Write a synthetic graph as an edge list plus a metadata sidecar.
    Gen {
        #[arg(long, value_enum)]
        kind: GeneratorName,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Report degree-based knapsack cost statistics in the sidecar.
        #[arg(long)]
        knapsack: bool,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Print the retention ratios and the pruned-size bound.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kappa: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 1.0)]
        c_min: f64,
        #[arg(long)]
        json: bool,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Prune { run, out } => commands::prune(&RunConfig::load(&run)?, &out),
        Command::Solve { run, pruned, budget, out } => {
            commands::solve(&RunConfig::load(&run)?, pruned.as_deref(), budget, out.as_deref())
        }
        Command::Eval { run, pruned, out, jsonl } => {
            commands::eval(&RunConfig::load(&run)?, &pruned, out.as_deref(), jsonl)
        }
        Command::Sweep { run, out } => commands::sweep(&RunConfig::load(&run)?, &out),
        Command::Gen { kind, n, p, m, seed, knapsack, out } => {
            commands::gen(&GenerateConfig { kind, n, p, m, seed }, knapsack, &out)
        }
        Command::Bounds { n, kappa, delta, epsilon, gamma, c_min, json } => {
            commands::bounds(n, kappa, delta, epsilon, gamma, c_min, json)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(failure::EXIT_CONFIG) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            f.exit_code()
        }
    }
}
