//! `qlie`: command-line access to root systems, cocycles, the degenerate Hall
//! algebra, stability, semicanonical coefficients and the BPS audits.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qlie::Error;

#[derive(Parser, Debug)]
#[command(name = "qlie", version, about = "Exact computations for cocycle Lie algebras of ADE quivers")]
pub struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Hall polynomial cache directory (overrides QLIE_CACHE).
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Do not read or write the Hall polynomial cache.
    #[arg(long, global = true)]
    pub no_cache: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct TypeArg {
    /// Dynkin type, e.g. A3, D5, E6, A~2, D~4.
    #[arg(long = "type", value_name = "TYPE")]
    pub ty: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List positive roots.
    Roots {
        #[command(flatten)]
        ty: TypeArg,
        /// Height cutoff for affine types.
        #[arg(long, default_value_t = 6)]
        max_height: u32,
        /// Print only the number of roots.
        #[arg(long)]
        count: bool,
    },
    /// List the root partitions of a dimension vector.
    Partitions {
        #[command(flatten)]
        ty: TypeArg,
        /// Coordinates, or `highest`.
        #[arg(long)]
        root: String,
        /// Print only the number of partitions.
        #[arg(long)]
        count: bool,
    },
    /// Euler form and cocycle sign of two weights.
    Epsilon {
        #[command(flatten)]
        ty: TypeArg,
        /// Orientation as `i>j,...`; defaults to every edge toward the higher label.
        #[arg(long)]
        orientation: Option<String>,
        /// First weight, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Second weight, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Bracket of two root vectors in the cocycle Lie algebra.
    Bracket {
        #[command(flatten)]
        ty: TypeArg,
        /// Orientation as `i>j,...`; defaults to every edge toward the higher label.
        #[arg(long)]
        orientation: Option<String>,
        /// First positive root.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Second positive root.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Truncation `≤ cutoff·δ` for affine types.
        #[arg(long, default_value_t = 2)]
        cutoff: u32,
        /// Sign convention for affine types.
        #[arg(long, value_enum, default_value_t = Convention::Descended)]
        convention: Convention,
    },
    /// Hall polynomials and the bracket identity in the degenerate Hall algebra.
    Hall {
        #[command(flatten)]
        ty: TypeArg,
        /// Orientation as `i>j,...`; defaults to every edge toward the higher label.
        #[arg(long)]
        orientation: Option<String>,
        /// Check `[E_α, E_β] = ε(α, β) E_{α+β}`.
        #[arg(long, requires = "beta", conflicts_with_all = ["m", "n", "p"])]
        alpha: Option<String>,
        /// Second root for the bracket identity.
        #[arg(long, requires = "alpha")]
        beta: Option<String>,
        /// Middle term of a Hall number, as a partition key.
        #[arg(long, requires_all = ["n", "p"])]
        m: Option<String>,
        /// Quotient type.
        #[arg(long)]
        n: Option<String>,
        /// Submodule type.
        #[arg(long)]
        p: Option<String>,
        /// Also evaluate at this field order.
        #[arg(long)]
        q: Option<u32>,
    },
    /// Run the stability lemma harness for one root.
    Stability {
        #[command(flatten)]
        ty: TypeArg,
        /// Dimension vector, or `highest`.
        #[arg(long)]
        root: String,
        /// Orientation as `i>j,...`; defaults to every edge toward the higher label.
        #[arg(long)]
        orientation: Option<String>,
        /// Field order for the representation count.
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Coefficients of E*_α in the semicanonical basis.
    Coeffs {
        #[command(flatten)]
        ty: TypeArg,
        /// Positive root, or `highest`.
        #[arg(long)]
        root: String,
        /// Sign normalization of the computed entries.
        #[arg(long, value_enum, default_value_t = Normalize::Reference)]
        normalize: Normalize,
    },
    /// Validate shipped reference tables, table files, or the Hall cache.
    Validate {
        /// Comma-separated bundled tables: d4, d5.
        #[arg(long, value_delimiter = ',')]
        tables: Vec<String>,
        /// A table file to validate.
        #[arg(long, value_name = "PATH")]
        table_file: Vec<PathBuf>,
        /// Validate the Hall cache file in the cache directory.
        #[arg(long)]
        cache: bool,
    },
    /// Multiplicity audit and algebra-level conjecture checks for an affine type.
    BpsAudit {
        #[command(flatten)]
        ty: TypeArg,
        /// Truncation `≤ cutoff·δ`, from 1 to 4.
        #[arg(long, default_value_t = 2)]
        cutoff: u32,
    },
    /// Run the acceptance criteria.
    Selfcheck {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    Descended,
    Orientation,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalize {
    Reference,
    None,
}

/// What every command produces: JSON, a text rendering, and whether the
/// checks it ran passed.
pub struct Output {
    pub json: serde_json::Value,
    pub text: Vec<String>,
    pub passed: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Validation(_) | Error::Internal(_) => 1,
        Error::Input(_) => 2,
        Error::Resource(_) => 3,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            if cli.pretty {
                for line in &out.text {
                    println!("{line}");
                }
            } else {
                println!("{}", out.json);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("qlie: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
