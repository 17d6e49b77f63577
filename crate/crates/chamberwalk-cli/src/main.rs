//! `chamberwalk`: batch computations for radial walks on A~2 buildings.
//!
//! Exit codes: 0 success, 1 tolerance violation, 2 usage or parse error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "chamberwalk",
    version,
    about = "Hecke algebra, Plancherel and random walk computations for A~2 buildings"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Thickness q > 1, an integer or a rational "p/r".
    #[arg(long, global = true)]
    pub q: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Numeric)]
    pub mode: Mode,
    /// Quadrature points per circle.
    #[arg(long, global = true, default_value_t = 256)]
    pub grid: usize,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// n-step distributions of the simple walk.
    #[command(subcommand)]
    Walk(WalkCmd),
    /// Canonical trace of a Hecke algebra element by several methods.
    Trace(TraceArgs),
    /// Positively folded alcove walks of a given type.
    Walks(WalksArgs),
    /// Representation checks.
    #[command(subcommand)]
    Reps(RepsCmd),
    /// Eigenvalues of the simple walk at the trivial character.
    Spectrum,
}

#[derive(Subcommand, Debug)]
pub enum WalkCmd {
    /// Exact masses a_w^(n) and p^(n) = a_w^(n) / q^l(w).
    Exact {
        #[arg(long)]
        n: usize,
        /// Restrict to one element (comma-separated generators).
        #[arg(long)]
        word: Option<String>,
    },
    /// Monte Carlo simulation of the radial chain.
    Mc {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long)]
        word: Option<String>,
    },
    /// Local limit estimate against the exact value.
    Llt {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Exact, Monte Carlo and local limit values side by side.
    Compare {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        /// Allowed Monte Carlo deviation in binomial standard deviations.
        #[arg(long, default_value_t = 4.0)]
        sigmas: f64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TraceMethod {
    All,
    Exact,
    Plancherel,
    Series,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    One,
    SimpleWalk,
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    #[arg(long, value_enum, default_value_t = TraceMethod::All)]
    pub method: TraceMethod,
    /// JSON element file.
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    pub element: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
    /// Take the trace of the element raised to this power.
    #[arg(long, default_value_t = 1)]
    pub power: u32,
    /// Largest allowed discrepancy between methods.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Points per circle for the generating-function route.
    #[arg(long, default_value_t = 32)]
    pub series_grid: usize,
}

#[derive(Args, Debug)]
pub struct WalksArgs {
    /// Reduced word, comma-separated generator indices.
    #[arg(long = "type", allow_hyphen_values = true)]
    pub word: String,
    /// Finite Weyl group element to start from, as a word over 1,2.
    #[arg(long, default_value = "")]
    pub start: String,
}

#[derive(Subcommand, Debug)]
pub enum RepsCmd {
    /// Relation residuals and irreducibility of the principal series at t.
    Check {
        /// Central character as re,im,re,im.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
}

fn main() -> ExitCode {
    if let Ok(s) = std::env::var("CW_THREADS") {
        match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                chamberwalk::par::init_threads(n);
            }
            _ => {
                eprintln!("error: CW_THREADS must be a positive integer, got {s:?}");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
