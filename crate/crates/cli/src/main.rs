//! `segalkit`: checks and constructions on finite internal categories.
//!
//! Exit status is 0 when every check passes, 1 on a failed verification,
//! 2 when an input cannot be parsed or resolved and 3 when a cap is exceeded.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "segalkit", version, about = "Checks and constructions on finite internal categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    caps: Caps,
}

/// Caps and options shared by every command.
#[derive(Args, Debug, Clone)]
pub struct Caps {
    /// Largest finite set any construction may produce.
    #[arg(long, global = true, default_value_t = 64)]
    pub base_bound: usize,
    /// Simplicial truncation level.
    #[arg(long, global = true, default_value_t = 3)]
    pub truncation: usize,
    /// Largest finite set in the probe over which naturality is checked.
    #[arg(long, global = true, default_value_t = 2)]
    pub probe_size: usize,
    /// Search budget for oracles and colimit enumeration.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub budget: usize,
    /// Attach brute-force certificates.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Write the JSON report here.
    #[arg(long, global = true, value_name = "OUT")]
    pub json: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Whether the Segal maps of a simplicial object are bijective.
    CheckSegal { file: PathBuf },
    /// Whether an internal category is complete.
    CheckComplete { file: PathBuf },
    /// Whether an internal category is an internal groupoid.
    CheckGroupoid { file: PathBuf },
    /// The externalization on the probe.
    Externalize { file: PathBuf },
    /// The exponential `TARGET^SOURCE`.
    Exponential { target: PathBuf, source: PathBuf },
    /// The tensor `Δ^n ⊗ X`.
    Tensor {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// The cotensor `X^{Δ^n}`.
    Cotensor {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// The core of an internal category.
    Core { file: PathBuf },
    /// Functors and transformations `SOURCE -> TARGET`, counted three ways.
    Yoneda { source: PathBuf, target: PathBuf },
    /// The externalization against the pointwise colimit formula.
    KanCheck { file: PathBuf },
    /// `Ext(Δ^1 ⊗ c(1))` against `Δ^1 ⊗ Ext(c(1))` at a finite set.
    CounterexampleDemo {
        #[arg(long, default_value_t = 2)]
        size: usize,
    },
    /// Runs every item of a suite file.
    Suite { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(&cli.command, &cli.caps);
    let report = match outcome {
        Ok(r) => r,
        Err(e) => Report::error(&cli.command, &e),
    };
    print!("{}", report.summary());
    if let Some(path) = &cli.caps.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code())
}
