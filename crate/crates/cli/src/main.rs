use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod error;
mod render;

use config::RunConfig;

/// Coarse-graining orders between quantum measurements.
#[derive(Debug, Parser)]
#[command(name = "povm-order", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Seed for witness search and random constructions.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Logarithm base: 2 (bits) or e (nats).
    #[arg(long, global = true, default_value = "2", value_parser = ["2", "e"])]
    log_base: String,
    #[arg(long, global = true)]
    tol_psd: Option<f64>,
    #[arg(long, global = true)]
    tol_span: Option<f64>,
    #[arg(long, global = true)]
    tol_stoch: Option<f64>,
    /// Random states (or state pairs) per witness search.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check positivity and completeness of a POVM file.
    Validate { file: PathBuf },
    /// Observational entropy, or measured relative entropy with `--sigma`.
    Entropy {
        povm: PathBuf,
        state: PathBuf,
        #[arg(long)]
        sigma: Option<PathBuf>,
    },
    /// Decide every relation between two POVMs in both directions.
    Classify { n: PathBuf, m: PathBuf },
    /// Build POVMs and write them as JSON.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Recompute all worked examples and compare with their closed forms.
    Reproduce {
        /// Allowed absolute error on each value, in bits.
        #[arg(long, default_value_t = 1e-9)]
        value_tol: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// `N_j = Σ_i Λ_{j|i} M_i` for a map given as a JSON array of rows.
    Postprocess {
        #[arg(long)]
        povm: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mix a two-outcome POVM (default: computational qubit basis) with noise.
    EpsMix {
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        povm: Option<PathBuf>,
        /// Directory receiving `N.json` and `M.json`.
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// `λN ⊕ (1−λ)𝟙`.
    NLambda {
        #[arg(long)]
        povm: PathBuf,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump a named fixture (`ex3`, `ex4`, `prop1_counter`).
    Example {
        name: String,
        /// Directory receiving one file per POVM and state.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match RunConfig::from_args(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    if !config.json {
        eprintln!("{}", config.summary());
    }
    let result = match cli.command {
        Command::Validate { file } => commands::validate(&file, &config),
        Command::Entropy { povm, state, sigma } => {
            commands::entropy(&povm, &state, sigma.as_deref(), &config)
        }
        Command::Classify { n, m } => commands::classify(&n, &m, &config),
        Command::Construct { kind } => commands::construct(kind, &config),
        Command::Reproduce { value_tol } => commands::reproduce(value_tol, &config),
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(if outcome.success { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
