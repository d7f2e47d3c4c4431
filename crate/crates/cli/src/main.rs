//! Command-line front end for the codes, simulators and evaluators of `rscodes`.
//!
//! Exit status: 0 on success, 2 for configuration errors, 3 for runtime
//! (decode or simulation) failures.

mod apps;
mod codes;
mod output;
mod params;
mod sims;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::{Format, Output};

#[derive(Parser, Debug)]
#[command(name = "rscodes", version, about = "Reed-Solomon codes and their applications")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// JSON parameter document for the subcommand.
    #[arg(long, global = true, value_name = "FILE")]
    pub json: Option<std::path::PathBuf>,
    /// Parameter override `key=value` (value parsed as JSON, else taken as a string).
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Master seed.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Write the result to a file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Galois field tables.
    Gf {
        #[command(subcommand)]
        cmd: codes::GfCmd,
    },
    /// Reed-Solomon encoding and decoding.
    Rs {
        #[command(subcommand)]
        cmd: codes::RsCmd,
    },
    /// Packet erasure recovery and corrupted-row array decoding.
    Packets {
        #[command(subcommand)]
        cmd: codes::PacketsCmd,
    },
    /// Monte-Carlo simulators.
    Sim(sims::SimArgs),
    /// Closed-form evaluators.
    Eval {
        #[command(subcommand)]
        cmd: sims::EvalCmd,
    },
    /// Noise generators.
    Noise {
        #[command(subcommand)]
        cmd: sims::NoiseCmd,
    },
    /// Constrained coding: symbol avoidance, RLL, distance profiles, same-weight.
    Constrained {
        #[command(subcommand)]
        cmd: apps::ConstrainedCmd,
    },
    /// Memories with stuck-at defects.
    Defects {
        #[command(subcommand)]
        cmd: apps::DefectsCmd,
    },
    /// Biometric template protection.
    Vault {
        #[command(subcommand)]
        cmd: apps::VaultCmd,
    },
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Runtime(String),
}

impl From<rscodes::Error> for CliError {
    fn from(e: rscodes::Error) -> Self {
        match e {
            rscodes::Error::BadParameters(_)
            | rscodes::Error::TooLarge(_)
            | rscodes::Error::NotPrime(_)
            | rscodes::Error::NotMinimalPolynomial { .. }
            | rscodes::Error::BadDistribution(_)
            | rscodes::Error::InfeasibleCapacity(_) => CliError::Config(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn config<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Config(msg.into()))
}

fn run(cli: Cli) -> CliResult<Output> {
    let g = &cli.global;
    match cli.command {
        Command::Gf { cmd } => codes::gf(cmd, g),
        Command::Rs { cmd } => codes::rs(cmd, g),
        Command::Packets { cmd } => codes::packets(cmd, g),
        Command::Sim(args) => sims::sim(args, g),
        Command::Eval { cmd } => sims::eval(cmd, g),
        Command::Noise { cmd } => sims::noise(cmd, g),
        Command::Constrained { cmd } => apps::constrained(cmd, g),
        Command::Defects { cmd } => apps::defects(cmd, g),
        Command::Vault { cmd } => apps::vault(cmd, g),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let global = cli.global.clone();
    let result = run(cli).and_then(|out| out.emit(global.format, global.out.as_deref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
