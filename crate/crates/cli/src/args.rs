use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "permv",
    version,
    about = "Permanental ideals: Gröbner bases, colon ideals, α-invariants and v-numbers"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Default, Args)]
pub struct GlobalArgs {
    /// Characteristic of the coefficient field: 0 for the rationals or a prime.
    #[arg(long = "char", global = true, value_name = "P")]
    pub characteristic: Option<u64>,

    /// `shape-default` or `lex:<v1,v2,...>` (a permutation of the shape's variables).
    #[arg(long, global = true, value_name = "ORDER")]
    pub order: Option<String>,

    /// Degree ceiling for α computations and witness search.
    #[arg(long = "max-degree", global = true, value_name = "D")]
    pub max_degree: Option<u32>,

    /// Seed for the randomized witness search.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Include wall-clock timings (makes output run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,

    /// TOML configuration file.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Debug, Args)]
pub struct ShapeArg {
    /// `generic:MxN`, `symmetric:N` or `hankel:MxN`, optionally `:t=T`.
    #[arg(long)]
    pub shape: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the generators of the permanental ideal.
    Ideal(ShapeArg),
    /// Print the reduced Gröbner basis with its Buchberger certificate.
    Gb(ShapeArg),
    /// Reduce a polynomial modulo the ideal.
    Nf {
        #[command(flatten)]
        shape: ShapeArg,
        #[arg(long)]
        poly: String,
    },
    /// Compute I : f or I : J.
    #[command(group(ArgGroup::new("divisor").required(true).args(["poly", "ideal"])))]
    Colon {
        #[command(flatten)]
        shape: ShapeArg,
        #[arg(long)]
        poly: Option<String>,
        /// Comma-separated generators of J.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Least degree of a nonzero element of (I : J) / I.
    Alpha {
        #[command(flatten)]
        shape: ShapeArg,
        /// Comma-separated generators of J.
        #[arg(long)]
        ideal: String,
    },
    /// Bound and, where possible, determine the v-number.
    Vnumber {
        #[command(flatten)]
        shape: ShapeArg,
        /// Skip the witness search; use listed witnesses only.
        #[arg(long)]
        no_search: bool,
    },
    /// v-numbers of several shapes (default: the built-in suite).
    Table {
        #[arg(long)]
        shape: Vec<String>,
    },
    /// Replay the built-in identity corpus.
    Verify {
        /// Run only the check with this id or id prefix.
        #[arg(long)]
        check: Option<String>,
        /// Replay the checks in this TOML file instead of the built-in corpus.
        #[arg(long, value_name = "FILE")]
        corpus: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Ideal(_) => "ideal",
            Command::Gb(_) => "gb",
            Command::Nf { .. } => "nf",
            Command::Colon { .. } => "colon",
            Command::Alpha { .. } => "alpha",
            Command::Vnumber { .. } => "vnumber",
            Command::Table { .. } => "table",
            Command::Verify { .. } => "verify",
        }
    }
}
