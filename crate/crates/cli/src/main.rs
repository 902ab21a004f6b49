use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Exact computations with diassociative algebras given by structure constants.
///
/// Exit codes: 0 success, 1 checked-false or invalid input algebra,
/// 2 usage, format or I/O error, 3 theorem violation.
#[derive(Debug, Parser)]
#[command(name = "dias", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the five identities of an algebra file, or the representation
    /// identities of a representation file.
    Verify { path: PathBuf },
    /// Decide nilpotency.
    Nilpotent {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Print the subspace chain or the per-basis operator indices.
        #[arg(long)]
        certificate: bool,
    },
    /// Print a canonical basis of an ideal.
    Ideal {
        path: PathBuf,
        #[arg(value_enum)]
        kind: IdealKind,
        /// Generators for `closure`: a basis name such as `e2`, or
        /// comma-separated coordinates such as `1,0,-1/2`.
        #[arg(allow_hyphen_values = true)]
        generators: Vec<String>,
    },
    /// Write the quotient by an ideal as an algebra file.
    Quotient {
        path: PathBuf,
        #[arg(long, value_enum)]
        by: QuotientBy,
        /// Generators when `--by gens` (same syntax as `ideal closure`).
        #[arg(long = "gen", allow_hyphen_values = true)]
        generators: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Representation checks.
    Rep {
        #[command(subcommand)]
        command: RepCommand,
    },
    /// Write every algebra of a small census as separate files.
    Enumerate {
        #[arg(long)]
        field: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Run property suites over a corpus and print the reports.
    Suite(SuiteArgs),
    /// Generate seeded random algebras.
    Generate {
        #[arg(long)]
        mode: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to the DIAS_FIELD environment variable, then Q.
        #[arg(long)]
        field: Option<String>,
        /// Number of algebras, using consecutive seeds.
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Output directory; required when `--count` exceeds 1.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum RepCommand {
    /// Check the representation identities.
    Check(RepTarget),
    /// Common null space of all four actions.
    Nullvec(RepTarget),
    /// Kernel and action dichotomy of an irreducible representation.
    Dichotomy(RepTarget),
}

#[derive(Debug, Args)]
struct RepTarget {
    /// Representation file.
    #[arg(required_unless_present = "regular", conflicts_with = "regular")]
    path: Option<PathBuf>,
    /// Use the regular representation of this algebra file instead.
    #[arg(long)]
    regular: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SuiteArgs {
    /// Directory of algebra files; the built-in standard corpus otherwise.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Suite name, or `all`. May be repeated.
    #[arg(long = "suite", required = true)]
    suites: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 2)]
    rep_dim_max: usize,
    /// Also write the reports to this file.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Series,
    Engel,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum IdealKind {
    Dias,
    Annihilator,
    Closure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum QuotientBy {
    Dias,
    Annihilator,
    Gens,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.status as u8)
        }
    }
}
