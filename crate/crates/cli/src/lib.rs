//! Command-line front end for the `lqnash` solver.

use std::io::Write;

use clap::{Parser, Subcommand};
use thiserror::Error;

pub mod commands;
pub mod format;
pub mod params;
pub mod report;
pub mod svg;
pub mod sweep;
pub mod verify;

pub use params::GameArgs;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_DISAGREE: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("internal consistency violation: {0}")]
    Internal(String),
    #[error("{0}")]
    Disagreement(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Internal(_) | CliError::Io(_) => EXIT_INTERNAL,
            CliError::Disagreement(_) => EXIT_DISAGREE,
        }
    }
}

impl From<lqnash::solver::SolveError> for CliError {
    fn from(e: lqnash::solver::SolveError) -> Self {
        use lqnash::solver::SolveError;
        match e {
            SolveError::Game(g) => CliError::Invalid(g.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "lqnash",
    version,
    about = "Exact Nash equilibria of scalar two-player LQ games"
)]
pub struct Cli {
    /// Seed for the randomized starts of `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Suppress progress and summary lines.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one game and print every equilibrium.
    Solve {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Sweep `a` and `r2` as described by a JSON config; writes CSV (and
    /// optionally SVG and JSON).
    Sweep { config: std::path::PathBuf },
    /// Cross-check the solver against the brute-force oracles.
    Verify {
        #[command(flatten)]
        game: GameArgs,
        /// Grid resolution of the residual scan.
        #[arg(long, default_value_t = lqnash::oracle::DEFAULT_GRID)]
        grid_n: usize,
        /// Agreement tolerance in policy space.
        #[arg(long, default_value_t = lqnash::oracle::DEDUP_TOL)]
        tol: f64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Re-derive the elimination polynomial with Buchberger's algorithm.
    GroebnerCheck {
        #[command(flatten)]
        game: GameArgs,
    },
}

/// Runs a parsed command line, writing the command's output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Solve { game, format } => commands::cmd_solve(game, *format, out),
        Command::Sweep { config } => sweep::cmd_sweep(config, cli.threads, cli.quiet, out),
        Command::Verify {
            game,
            grid_n,
            tol,
            inject_fault,
        } => {
            let opts = verify::VerifyOptions {
                grid_n: *grid_n,
                tol: *tol,
                seed: cli.seed,
                inject_fault: *inject_fault,
            };
            verify::cmd_verify(game, &opts, out)
        }
        Command::GroebnerCheck { game } => commands::cmd_groebner_check(game, out),
    }
}

/// Parses `args` (including the program name), runs, and returns the exit
/// code. Errors go to `err`.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match run(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
