//! `dpcolor`: cycle spectra, chromatic, choice and DP-chromatic numbers,
//! reducible configurations, discharging audits and batch verification.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dpcolor::RuleVariant;

use input::Format;

/// Colorable, or the command completed.
pub const EXIT_OK: u8 = 0;
/// A certificate of non-colorability (or a negative answer) was produced.
pub const EXIT_CERTIFICATE: u8 = 1;
/// A search limit was hit before an answer.
pub const EXIT_BUDGET: u8 = 2;
/// Bad input, I/O failure or refused precondition.
pub const EXIT_INPUT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "dpcolor", version, about = "Exact DP-coloring and discharging checks for small plane graphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Cap on search cases per decision.
    #[arg(long, global = true, env = "DPCOLOR_BUDGET", default_value_t = dpcolor::solver::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Master seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Input format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Auto)]
    pub format: Format,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub sidecar: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Graph file (graph6, edge list or embedding JSON); `-` for stdin.
    #[arg(default_value = "-")]
    pub input: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct Decide {
    #[command(flatten)]
    pub input: Input,
    /// Decide this k instead of computing the number.
    #[arg(long)]
    pub k: Option<usize>,
    /// Where to write a certificate of failure.
    #[arg(long, value_name = "PATH")]
    pub certificate: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cycle lengths up to 9 and the forbidden-cycle sets avoided.
    Cycles(Input),
    /// Chromatic number.
    Chi(Input),
    /// Choice number, or k-choosability with --k.
    ChiList(Decide),
    /// DP-chromatic number, or DP-k-colorability with --k.
    ChiDp(Decide),
    /// Find a coloring from lists, under matchings if given.
    Color {
        #[command(flatten)]
        input: Input,
        /// Uniform lists 0..k when no list file is given.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// `v: c1 c2 ..` per vertex.
        #[arg(long, value_name = "PATH")]
        lists: Option<PathBuf>,
        /// Matching file (`u v : a-b, ..` lines, `default identity k=K`).
        #[arg(long, value_name = "PATH")]
        matchings: Option<PathBuf>,
    },
    /// Certify a configuration in a host graph and test the extension on
    /// random matchings and colorings.
    Extend {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        pattern: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Try every ordering of the pattern (at most 8 vertices).
        #[arg(long)]
        search_order: bool,
        /// Random trials per run.
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// List occurrences of a configuration in a host graph.
    FindConfig {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        pattern: PathBuf,
    },
    /// Run the discharging rules on an embedding and report what is left.
    Discharge {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "a")]
        variant: RuleVariant,
        /// Refuse to run when the graph has a cycle the variant excludes.
        #[arg(long)]
        strict: bool,
        /// Write the transfer log as TSV.
        #[arg(long, value_name = "PATH")]
        log: Option<PathBuf>,
        /// Configurations to look for; repeatable.
        #[arg(long, value_name = "PATH")]
        pattern: Vec<PathBuf>,
    },
    /// DP-k-colorability of every planar graph in a graph6 stream that
    /// avoids a forbidden set of cycle lengths.
    #[command(name = "verify-theorem2")]
    VerifyTheorem2 {
        /// graph6 stream; `-` for stdin.
        #[arg(default_value = "-")]
        input: PathBuf,
        /// `a`, `b67`, `b68` or a length set like `4679`; repeatable.
        /// Defaults to all three.
        #[arg(long, value_parser = commands::parse_forbidden)]
        variant: Vec<dpcolor::ForbiddenVariant>,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = dpcolor::embedding::BRUTE_FORCE_MAX_N)]
        n_max: usize,
        /// Where to write certificates of any refutation.
        #[arg(long, value_name = "PATH")]
        certificate: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
