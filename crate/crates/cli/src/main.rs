//! `thvand`: build and verify thin Hessenberg systems from the command line.
//!
//! Input JSON comes from `--in FILE` or standard input; results go to
//! standard output as JSON. Exit codes: 0 success, 1 invalid input,
//! 2 a verified property failed.

mod commands;
mod json;

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "thvand", version, about = "Exact thin Hessenberg systems and double Vandermonde systems")]
struct Cli {
    /// Read input JSON from this file instead of standard input.
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a parameter array.
    Validate,
    /// Build the split-basis system and verify its axioms.
    Build {
        #[arg(long, value_enum, default_value_t = Emit::Matrices)]
        emit: Emit,
    },
    /// Transition matrices, the polynomial p and the families s and t.
    Transition,
    /// Apply a relative: star, tilde or tilde_star.
    Relatives {
        #[arg(long)]
        g: String,
    },
    /// Apply θ → αθ + β, θ* → α*θ* + β*, φ → αα*φ.
    Affine {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        beta: String,
        #[arg(long = "alpha-star", default_value = "1", allow_hyphen_values = true)]
        alpha_star: String,
        #[arg(long = "beta-star", default_value = "0", allow_hyphen_values = true)]
        beta_star: String,
    },
    /// West/south Vandermonde tools.
    Vand {
        #[command(subcommand)]
        op: VandOp,
    },
    /// Random round trips through ρ, χ and the affine-class tests.
    Roundtrip(SampleArgs),
    /// Random samples through every identity suite.
    Selftest(SampleArgs),
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum VandOp {
    /// Recover the polynomials of {"X", "theta"} and/or {"X", "theta_star"}.
    Extract,
    /// Invert a west system {"X", "theta"} and certify its south structure.
    Invert,
    /// Diagonalize a Hessenberg matrix {"H"} (optional "theta" fixes the order).
    Diag,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    Matrices,
    Scalars,
}

#[derive(clap::Args, Debug, Clone)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 100)]
    samples: u64,
    #[arg(long, default_value_t = 4)]
    d: usize,
    /// `q` or a prime such as `101`.
    #[arg(long, default_value = "q")]
    field: String,
    #[arg(long, env = "THVAND_SEED", default_value_t = 0)]
    seed: u64,
}

/// What a command produced: JSON output and whether every property held.
pub struct Outcome {
    pub value: Value,
    pub property_failed: bool,
}

impl Outcome {
    pub fn ok(value: Value) -> Self {
        Self {
            value,
            property_failed: false,
        }
    }

    pub fn checked(value: Value, passed: bool) -> Self {
        Self {
            value,
            property_failed: !passed,
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<Value> {
    let text = match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("cannot read standard input")?;
            s
        }
    };
    serde_json::from_str(&text).context("malformed JSON")
}

fn run(cli: &Cli) -> Result<Outcome> {
    let input = || read_input(&cli.input);
    match &cli.command {
        Command::Validate => commands::validate(&input()?),
        Command::Build { emit } => commands::build(&input()?, *emit),
        Command::Transition => commands::transition(&input()?),
        Command::Relatives { g } => commands::relatives(&input()?, g),
        Command::Affine {
            alpha,
            beta,
            alpha_star,
            beta_star,
        } => commands::affine(&input()?, [alpha, beta, alpha_star, beta_star]),
        Command::Vand { op } => commands::vand(&input()?, *op),
        Command::Roundtrip(args) => commands::roundtrip(&args.field, args.d, args.samples, args.seed),
        Command::Selftest(args) => commands::selftest(&args.field, args.d, args.samples, args.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{}", serde_json::to_string_pretty(&out.value).expect("serializable"));
            if out.property_failed {
                eprintln!("thvand: a verified property failed");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let msg = format!("{e:#}");
            println!("{}", json!({"error": {"kind": "input", "message": msg}}));
            eprintln!("thvand: {msg}");
            ExitCode::from(1)
        }
    }
}
