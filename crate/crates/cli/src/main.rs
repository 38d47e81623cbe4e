//! `g2`: fusion rules, path bases and braid representations for G₂ from the
//! command line. Reports go to stdout as JSON unless `--format` says
//! otherwise; diagnostics go to stderr.
//!
//! Exit codes: 0 all checks pass, 1 internal error, 2 usage or guard
//! failure, 3 solver failure, 4 verification failure.

mod cache;
mod commands;
mod qspec;

use clap::{Parser, Subcommand, ValueEnum};
use g2core::braidrep::Mode;
use g2core::lattice::{LevelRule, Weight};
use std::path::PathBuf;
use std::process::ExitCode;

pub use qspec::QSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    All,
    Generic,
    Subquotient,
    W,
    B3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Lemma459,
    Distinctness,
    Recent,
    TlObstruction,
    Rep,
}

#[derive(Debug, Parser)]
#[command(name = "g2", version, about = "G2 fusion rules, path bases and braid group representations")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
    /// level k, or "generic"
    #[arg(long, global = true, default_value = "generic")]
    pub level: LevelRule,
    /// generic | root:<m>:<e> | float:<re>,<im>
    #[arg(long, global = true)]
    pub q: Option<QSpec>,
    /// exact | float (default: exact for root q, float otherwise)
    #[arg(long, global = true)]
    pub mode: Option<Mode>,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// directory for the fusion-product cache
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// largest tensor power accepted
    #[arg(long, global = true, default_value_t = 5)]
    pub max_n: usize,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Fusion product of two simple objects
    Fuse { a: Weight, b: Weight },
    /// Assemble the braid representation on Hom(V_μ, V^⊗n) and verify it
    Synth {
        #[arg(long, default_value = "1,0")]
        mu: Weight,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Bratteli diagram of V^⊗n
    Bratteli { n: usize },
    /// Quantum dimension of a simple object
    Dims { mu: Weight },
    /// Representation tables of the cubic Hecke quotient, optionally evaluated at --q
    Catalog {
        #[arg(value_enum, default_value = "all")]
        table: Table,
    },
    /// Named checks
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[arg(long)]
        ell: Option<i64>,
        #[arg(long, default_value = "1,0")]
        mu: Weight,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// size bound for weights checked at generic level
        #[arg(long, default_value_t = 6)]
        max_size: i64,
        /// tolerance on rank decisions in the Burnside check
        #[arg(long, default_value_t = 1e-7)]
        rank_tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(dir) = &cli.cache {
        cache::load(dir);
    }
    let result = commands::run(&cli);
    if let Some(dir) = &cli.cache {
        if let Err(e) = cache::store(dir) {
            eprintln!("warning: could not write cache in {}: {e}", dir.display());
        }
    }
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: verification failed");
                ExitCode::from(4)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
