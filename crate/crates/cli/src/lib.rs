//! Front end for `tango-core`: argument parsing, input decoding and report
//! rendering. [`run`] returns the rendered output and the process exit code
//! instead of printing, so it can be driven from tests.

mod corollaries;
mod cover_cmd;
mod curve_cmd;
mod input;
pub mod selftest;
mod tower_cmd;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

pub use tower_cmd::TowerScript;

#[derive(Parser, Debug)]
#[command(
    name = "tango",
    version,
    about = "Canonical classes of cyclic-cover towers over Tango curves"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Artin–Schreier curves y^p - y = f(x).
    #[command(subcommand)]
    Curve(CurveCommand),
    /// Towers of cover steps over a base.
    #[command(subcommand)]
    Tower(TowerCommand),
    /// Cyclic-cover summands on a P^1-bundle.
    #[command(subcommand)]
    Cover(CoverCommand),
    /// Reruns the impossibility searches and compares with the expected verdicts.
    VerifyCorollaries(CorollaryArgs),
    /// Seeded randomized consistency checks across all modules.
    Selftest(SelftestArgs),
}

#[derive(Subcommand, Debug)]
pub enum CurveCommand {
    /// Genus, Tango and pre-Tango verdicts, and Tango-invariant bounds.
    Analyze(CurveArgs),
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    /// Curve JSON `{"p":3,"f":[0,0,0,0,0,1]}`, inline or as a file path.
    #[arg(required_unless_present = "raynaud")]
    pub input: Option<String>,
    /// Use the family y^p - y = x^(lp-1) instead of an input, given as P,L.
    #[arg(long, value_parser = parse_pair, conflicts_with = "input")]
    pub raynaud: Option<(u64, u64)>,
    /// Divisor degrees d (D = d·P∞) to test; defaults to 1..=floor((2g-2)/p)+1.
    #[arg(long = "d", value_delimiter = ',')]
    pub degrees: Vec<u64>,
    /// Weighted-degree bound of the justification search; defaults to 2pm.
    #[arg(long)]
    pub weight_bound: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum TowerCommand {
    /// Applies a tower script and reports every level.
    Build(TowerArgs),
}

#[derive(Args, Debug)]
pub struct TowerArgs {
    /// Tower script JSON, inline or as a file path.
    pub input: String,
}

#[derive(Subcommand, Debug)]
pub enum CoverCommand {
    /// Summands, the M^k relation and the pushforward of the cover algebra.
    Check(CoverArgs),
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub k: u64,
    /// Branch multiplicity of F; defaults to the least m >= 1 with k | p + m.
    #[arg(long)]
    pub m: Option<u64>,
}

#[derive(Args, Debug)]
pub struct CorollaryArgs {
    #[arg(long, default_value_t = 97)]
    pub p_max: u64,
    #[arg(long, default_value_t = 10_000)]
    pub k_max: u64,
    #[arg(long, default_value_t = 6)]
    pub l_max: u32,
    #[arg(long, default_value_t = 100)]
    pub r_max: u64,
    /// Also write the certificates as JSON to this file.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random cases per section.
    #[arg(long, default_value_t = 200)]
    pub cases: usize,
}

fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected P,L, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn input(msg: impl std::fmt::Display) -> Self {
        CliError::Input(msg.to_string())
    }
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// A report plus whether it reproduces what was expected of it.
pub(crate) struct Report<T: Serialize> {
    pub body: T,
    pub text: String,
    pub ok: bool,
}

fn render<T: Serialize>(format: Format, report: Report<T>) -> Outcome {
    let stdout = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.body).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => report.text,
    };
    Outcome {
        code: if report.ok { EXIT_OK } else { EXIT_MISMATCH },
        stdout,
        stderr: String::new(),
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Curve(CurveCommand::Analyze(a)) => curve_cmd::analyze(a).map(|r| render(cli.format, r)),
        Command::Tower(TowerCommand::Build(a)) => tower_cmd::build(a).map(|r| render(cli.format, r)),
        Command::Cover(CoverCommand::Check(a)) => cover_cmd::check(a).map(|r| render(cli.format, r)),
        Command::VerifyCorollaries(a) => corollaries::verify(a).map(|r| render(cli.format, r)),
        Command::Selftest(a) => Ok(render(cli.format, selftest::run(a.seed, a.cases))),
    };
    result.unwrap_or_else(|e| Outcome {
        code: EXIT_INPUT,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    })
}
