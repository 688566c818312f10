use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::format::parse_complex;

#[derive(Debug, Parser)]
#[command(
    name = "qconnect",
    version,
    about = "Evaluate, verify and scan the q-Bessel connection machinery"
)]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Evaluate one registered function at a point.
    Eval(EvalArgs),
    /// Run an identity-verification suite and emit a JSON report.
    Verify(VerifyArgs),
    /// Emit a p -> 1 convergence scan as CSV.
    LimitScan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    Theta,
    Qpoch,
    Qgamma,
    Rphis,
    J1,
    J2,
    J3,
    G,
    F,
    Z,
    Hnu,
    Jplus,
    Jminus,
    Cplus,
    Cminus,
    Besselj,
    Hankel1,
    Hankel2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Core,
    Qbessel,
    Borel,
    Connection,
    Limits,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanTarget {
    Gamma,
    ThetaRatio,
    ThetaPower,
    Onephione,
    Main,
    Qbessel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    J1,
    J2,
    J3,
}

fn complex(s: &str) -> Result<Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    pub function: Function,
    /// Nome p (q = p^2).
    #[arg(long, allow_hyphen_values = true, value_parser = complex)]
    pub p: Option<Complex64>,
    /// Base q; takes precedence over p for the q-based functions.
    #[arg(long, allow_hyphen_values = true, value_parser = complex)]
    pub q: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = complex, default_value = "0.3")]
    pub nu: Complex64,
    /// Argument of the function (x, t or tau).
    #[arg(long, allow_hyphen_values = true, value_parser = complex)]
    pub x: Complex64,
    #[arg(long, allow_hyphen_values = true, value_parser = complex, default_value = "1")]
    pub lambda: Complex64,
    /// Relative stopping tolerance of the series.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Finite Pochhammer length for `qpoch`.
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Upper parameters of `rphis` (repeatable).
    #[arg(long = "a", allow_hyphen_values = true, value_parser = complex)]
    pub upper: Vec<Complex64>,
    /// Lower parameters of `rphis` (repeatable).
    #[arg(long = "b", allow_hyphen_values = true, value_parser = complex)]
    pub lower: Vec<Complex64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = complex, default_value = "0.3")]
    pub nu: Complex64,
    /// Point of the limit cases.
    #[arg(long, allow_hyphen_values = true, value_parser = complex, default_value = "1-i")]
    pub x: Complex64,
    /// Replaces every case threshold.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Largest k of the limit grids p = 1 - 2^-k.
    #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u32).range(2..=7))]
    pub kmax: u32,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Accepted for symmetry; the report is always JSON.
    #[arg(long)]
    pub json: bool,
    /// Record the real elapsed time instead of 0.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long = "fn", value_enum)]
    pub target: ScanTarget,
    #[arg(long, allow_hyphen_values = true, value_parser = complex, default_value = "0.3")]
    pub nu: Complex64,
    /// Second order of the theta-ratio scan.
    #[arg(long, allow_hyphen_values = true, value_parser = complex, default_value = "0")]
    pub nu2: Complex64,
    #[arg(long, allow_hyphen_values = true, value_parser = complex, default_value = "1")]
    pub x: Complex64,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(2..=7))]
    pub kmax: u32,
    /// Signed theta ratio, second theta-power item, or second ₁φ₁ limit.
    #[arg(long)]
    pub variant: bool,
    #[arg(long, value_enum, default_value = "j3")]
    pub kind: Kind,
    #[arg(long)]
    pub tol: Option<f64>,
    /// CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Emit the rows as a JSON array instead of CSV.
    #[arg(long)]
    pub json: bool,
}
