//! `equibase`: batch front end over the core library.
//!
//! Exit status: 0 when every check passes, 1 when a verification fails,
//! 2 on usage or parse errors, 3 when the time budget runs out.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "equibase", version, about = "Equational proof replay and finite model search")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for model enumeration.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub workers: u16,
    /// Wall-clock budget in seconds for searches.
    #[arg(long, global = true)]
    pub budget_secs: Option<f64>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = equibase::report::DEFAULT_SEED)]
    pub seed: u64,
    /// Allow sizes above the default bound of 3.
    #[arg(long, global = true)]
    pub stretch: bool,
    /// Extra theory file; may refer to the bundled signatures.
    #[arg(long, global = true, value_name = "FILE")]
    pub theories: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a term and print it in canonical form.
    Term {
        text: String,
        /// Signature to parse against (default: every bundled operator).
        #[arg(long)]
        signature: Option<String>,
    },
    /// Replay proof scripts.
    CheckProof {
        files: Vec<PathBuf>,
        /// Check the bundled corpus (before any files given).
        #[arg(long)]
        bundled: bool,
    },
    /// Evaluate an identity in a model.
    Eval {
        /// Model file, or the name of a bundled model.
        model: String,
        /// Identity name, or `lhs = rhs`.
        identity: String,
        /// Theory in which to look up the identity name.
        #[arg(long)]
        theory: Option<String>,
        /// List every counterexample (up to 1000).
        #[arg(long)]
        exhaustive_counterexamples: bool,
    },
    /// Print the n-element Lukasiewicz chain or its implication reduct.
    Chain {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        reduct: bool,
        /// Keep the constant `one` in the reduct.
        #[arg(long, requires = "reduct")]
        keep_one: bool,
    },
    /// Enumerate the models of a theory.
    Models {
        theory: String,
        /// A size `n` or an inclusive range `a..b`.
        #[arg(long)]
        size: String,
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long)]
        count_only: bool,
    },
    /// Compare the model sets of two theories at one size.
    Compare {
        left: String,
        right: String,
        #[arg(long)]
        size: usize,
        /// Restrict the right theory to these identities (comma separated).
        #[arg(long, value_delimiter = ',')]
        right_only: Vec<String>,
    },
    /// Check that a model satisfies exactly the listed identities; without
    /// arguments, runs the bundled independence fixtures.
    Independence {
        model: Option<String>,
        theory: Option<String>,
        #[arg(long, value_delimiter = ',')]
        hold: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        fail: Vec<String>,
    },
    /// Run the basis comparisons, independence models and closure checks.
    VerifyTheorems {
        #[arg(long, default_value_t = 2)]
        size: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(commands::run(&cli))
}
