//! `vtc`: reproducible tables of weights, fusion, monodromy, locality,
//! induction data and direct-limit self-tests.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vtc_core::exact::Rat;

#[derive(Parser, Debug)]
#[command(name = "vtc", version, about = "Exact fusion and direct-limit tables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub cfg: RunConfig,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Conformal weights of all simples with indices up to --bound.
    Weights,
    /// Fusion product of --x and --y.
    Fuse,
    /// Monodromy exponents of --x with --y, one row per summand.
    Monodromy,
    /// Whether the base simple induces to a local module of --algebra.
    Locality,
    /// Restriction of the induced module, summand by summand.
    Induce,
    /// Lowest-weight summand of the induced module.
    MinWeight,
    /// dim Hom between two induced modules.
    Frobenius,
    /// Simples transparent against every simple up to --witness-bound.
    Center,
    /// Property suite on seeded random direct systems.
    DirlimSelftest,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Built-in category name, deligne(a,b), or a path to a category JSON file.
    #[arg(long, global = true)]
    pub category: Option<String>,
    /// Built-in algebra name (svir-ext, osp-ext) or a path to an algebra JSON file.
    #[arg(long, global = true)]
    pub algebra: Option<String>,
    #[arg(long, global = true)]
    pub bound: Option<u32>,
    #[arg(long, global = true)]
    pub witness_bound: Option<u32>,
    #[arg(long, global = true, default_value_t = 20)]
    pub truncate: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random systems for dirlim-selftest.
    #[arg(long, global = true, default_value_t = 100)]
    pub cases: u64,
    /// Parameter value used to order weights in min-weight.
    #[arg(long, global = true, default_value = "355/113")]
    pub sample: Rat,
    #[arg(long, global = true)]
    pub n: Option<u32>,
    #[arg(long, global = true)]
    pub m: Option<u32>,
    #[arg(long, global = true)]
    pub r: Option<u32>,
    #[arg(long = "s-index", global = true)]
    pub s_index: Option<u32>,
    /// First label, e.g. "Lt(2,1)" or "Lk(2,1)⊗Lt(2,1)".
    #[arg(long, global = true)]
    pub x: Option<String>,
    /// Second label.
    #[arg(long, global = true)]
    pub y: Option<String>,
}

/// Failure classes, mapped to process exit codes.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Compute(String),
    /// Carries the report, which is still printed.
    SelftestFailed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Compute(_) => 1,
            CliError::Config(_) => 2,
            CliError::SelftestFailed(_) => 3,
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("VTC_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::Config(format!("VTC_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| commands::run(cli.command, &cli.cfg));
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                CliError::Config(msg) => eprintln!("vtc: configuration error: {msg}"),
                CliError::Compute(msg) => eprintln!("vtc: {msg}"),
                CliError::SelftestFailed(report) => print!("{report}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
