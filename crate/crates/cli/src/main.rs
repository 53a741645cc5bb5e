//! `qdot`: spectra of quantum-dot Dirac operators and ∂̄-Robin Laplacians.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qdot", version, about = "Quantum-dot Dirac and dbar-Robin spectra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Eigenvalue branches on a disk.
    DiskCurves,
    /// First eigenvalues on a general domain (MPS).
    DomainEig,
    /// Bergman-Gram value of S_Omega against its sharp lower bound.
    SOmega,
    /// Hardy/Bergman norm identities on the unit disk.
    Hardy,
    /// Comparison against the disk of equal area.
    FkSweep,
    /// Negative-mass crossing angle.
    NegMass,
    /// Charge-conjugation and chiral symmetry of disk spectra.
    Invariance,
    /// Quick invariant suite.
    Selfcheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Operator {
    Dirac,
    Robin,
    Dirichlet,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Opts {
    /// Domain-spec file.
    #[arg(long, global = true)]
    pub domain: Option<PathBuf>,
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Disk radius; overrides `radius` in a disk domain file.
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mass: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub operator: Option<Operator>,
    #[arg(long, global = true)]
    pub a_min: Option<f64>,
    #[arg(long, global = true)]
    pub a_max: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta_min: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta_max: Option<f64>,
    #[arg(long, global = true)]
    pub points: Option<usize>,
    /// Bergman degree N (truncation length for `hardy`).
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// MPS order K (branch order bound for `disk-curves`).
    #[arg(long, global = true)]
    pub orders: Option<usize>,
    /// Boundary nodes M.
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

pub const EXIT_SOLVER: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.opts.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_SOLVER);
        }
    }
    match commands::run(cli.command, &cli.opts) {
        Ok(code) => ExitCode::from(code),
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(commands::Failure::Solver(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_SOLVER)
        }
    }
}
