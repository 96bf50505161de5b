use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use psd_approx::PivotStrategy;

#[derive(Debug, Parser)]
#[command(name = "psd-approx", version, about = "Positive semidefinite approximation of Hermitian matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the approximation of a matrix and a diagnostics report
    Approx(ApproxArgs),
    /// Print the factors of the modified decomposition as JSON
    Decompose(DecomposeArgs),
    /// Report whether the approximation is positive (semi)definite
    Certify(CertifyArgs),
    /// Write a random test matrix
    Generate(GenerateArgs),
    /// Compare pivoting strategies against the eigenvalue-clipping optimum
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    /// Lower bound on the diagonal: a number or a file with one value per row
    #[arg(long, allow_hyphen_values = true, conflicts_with = "diag_fixed")]
    pub diag_min: Option<String>,
    /// Upper bound on the diagonal: a number or a file with one value per row
    #[arg(long, allow_hyphen_values = true, conflicts_with = "diag_fixed")]
    pub diag_max: Option<String>,
    /// Prescribe every diagonal entry of the result
    #[arg(long, allow_hyphen_values = true)]
    pub diag_fixed: Option<f64>,
    /// Lower bound on the pivots
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub pivot_min: f64,
    /// Upper bound on the pivots
    #[arg(long, default_value_t = f64::INFINITY)]
    pub pivot_max: f64,
    /// Pivots of magnitude below this become zero [default: scaled to the input]
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, default_value_t = PivotStrategy::MaxD, value_parser = parse_strategy)]
    pub strategy: PivotStrategy,
    /// Raise the pivot lower bound per row towards half its diagonal entry
    #[arg(long)]
    pub varying_lower_bound: bool,
}

pub fn parse_strategy(s: &str) -> Result<PivotStrategy, String> {
    s.parse().map_err(|_| {
        format!("unknown strategy '{s}' (expected natural, min-error or max-d)")
    })
}

#[derive(Debug, Clone, Args)]
pub struct ApproxArgs {
    /// Matrix Market input file
    #[arg(long)]
    pub input: PathBuf,
    /// Where to write the approximation [default: standard output]
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Where to write the JSON report
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Also write PREFIX.L.mtx, PREFIX.d.txt, PREFIX.p.txt, PREFIX.omega.txt, PREFIX.delta.txt
    #[arg(long, value_name = "PREFIX")]
    pub factors: Option<PathBuf>,
    /// Add the distance to the nearest PSD matrix to the report (real input only)
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub bounds: BoundArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Where to write the JSON [default: standard output]
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub bounds: BoundArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[command(flatten)]
    pub bounds: BoundArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// Random correlation matrix plus symmetric Gaussian noise
    Corr,
    /// Symmetric matrix with uniformly drawn eigenvalues of both signs
    Eig,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.1)]
    pub sigma: f64,
    #[arg(long, default_value_t = -1e4, allow_hyphen_values = true)]
    pub lambda_min: f64,
    #[arg(long, default_value_t = 1e4, allow_hyphen_values = true)]
    pub lambda_max: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LowerBoundMode {
    Fixed,
    Varying,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// `corr:SIGMA`, `eig:MIN:MAX`, or `standard` for all six built-in scenarios
    #[arg(long, allow_hyphen_values = true, required_unless_present = "inputs")]
    pub scenario: Option<String>,
    /// Matrix Market files to compare instead of generated matrices
    #[arg(long, num_args = 1.., conflicts_with = "scenario")]
    pub inputs: Vec<PathBuf>,
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    /// Number of generated matrices per scenario
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    /// First seed; matrix k uses seed + k
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Strategies to run [default: all]
    #[arg(long = "strategy", value_parser = parse_strategy)]
    pub strategies: Vec<PivotStrategy>,
    #[arg(long, value_enum, default_value_t = LowerBoundMode::Fixed)]
    pub lower_bound: LowerBoundMode,
    #[arg(long, default_value_t = 1e-8)]
    pub pivot_min: f64,
    #[arg(long, default_value_t = f64::INFINITY)]
    pub pivot_max: f64,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Do not prescribe a unit diagonal for correlation scenarios
    #[arg(long)]
    pub free_diagonal: bool,
    /// Where to write the JSON report [default: standard output]
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Also write one CSV line per run
    #[arg(long)]
    pub csv: Option<PathBuf>,
}
