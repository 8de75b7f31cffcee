//! `fixpur` command-line interface.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 domain or
//! infeasible input, 4 numerical-tolerance failure.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

/// Errors mapped to process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad flag combination (exit 2).
    Usage(String),
    /// Library error (exit 3, or 4 for numerical failures).
    Lib(fixpur::Error),
    /// Achieved tolerance worse than requested (exit 4).
    Tolerance(String),
    /// File-system failure (exit 1).
    Io(std::io::Error),
}

impl From<fixpur::Error> for CliError {
    fn from(e: fixpur::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Lib(fixpur::Error::Numerical(_)) | CliError::Tolerance(_) => 4,
            CliError::Lib(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Tolerance(m) => write!(f, "tolerance failure: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

/// Uniform fixed-purity density-matrix sampling and related analyses.
#[derive(Debug, Parser)]
#[command(name = "fixpur", version, about)]
struct Cli {
    /// Worker threads (0 = all logical cores). Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample density matrices at exactly fixed purity.
    Sample(SampleArgs),
    /// Evaluate a marginal CDF, or build and cache its table.
    Cdf(CdfArgs),
    /// Invert a marginal CDF.
    Invcdf(InvCdfArgs),
    /// Region shares and high-purity tail masses.
    Regions(RegionsArgs),
    /// Evaluate correlation measures on a batch of states.
    Measures(MeasuresArgs),
    /// Run a named experiment and write its datasets.
    #[command(subcommand)]
    Experiment(Experiment),
}

/// Flags of `sample`.
#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    /// Dimension N ≥ 2.
    #[arg(long)]
    pub dim: usize,
    /// Target purity (repeatable, or comma separated).
    #[arg(long = "purity", required = true, value_delimiter = ',')]
    pub purities: Vec<f64>,
    /// Samples per purity.
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    /// Seed (sample i of purity j uses stream (seed + j, i)).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Include dense matrices in the batch.
    #[arg(long)]
    pub emit_matrix: bool,
    /// Keep the chamber (descending) eigenvalue order.
    #[arg(long)]
    pub no_permute: bool,
    /// Also write CSV.
    #[arg(long)]
    pub csv: bool,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

/// Flags shared by `cdf` and `invcdf`.
#[derive(Debug, Args, Serialize)]
pub struct LevelArgs {
    /// Dimension N ≥ 2.
    #[arg(long)]
    pub dim: usize,
    /// `radial`, or an angle index k in 2..N−1 (2 selects φ₂).
    #[arg(long, default_value = "radial")]
    pub level: String,
    /// Conditioning value: r_N for k = N−1, X_{k+1} otherwise.
    #[arg(long)]
    pub context: Option<f64>,
    /// Context given as a purity (for k = N−1).
    #[arg(long, conflicts_with = "context")]
    pub context_purity: Option<f64>,
    /// Force the tabulated quadrature backend even where closed forms exist.
    #[arg(long)]
    pub numeric: bool,
}

/// Flags of `cdf`.
#[derive(Debug, Args, Serialize)]
pub struct CdfArgs {
    #[command(flatten)]
    pub level: LevelArgs,
    /// Evaluation point (radius or angle coordinate).
    #[arg(long, allow_hyphen_values = true)]
    pub at: Option<f64>,
    /// Evaluation point given as purity (radial level only).
    #[arg(long, conflicts_with = "at")]
    pub at_purity: Option<f64>,
    /// Build the interpolation table and store it in the cache directory.
    #[arg(long, conflicts_with_all = ["at", "at_purity"])]
    pub build_table: bool,
    /// Knots per smooth piece for --build-table.
    #[arg(long, default_value_t = 160)]
    pub knots: usize,
    /// Fail with exit code 4 when the achieved tolerance exceeds this.
    #[arg(long)]
    pub max_tol: Option<f64>,
}

/// Flags of `invcdf`.
#[derive(Debug, Args, Serialize)]
pub struct InvCdfArgs {
    #[command(flatten)]
    pub level: LevelArgs,
    /// Probability in [0, 1] (repeatable, or comma separated).
    #[arg(long = "p", required = true, value_delimiter = ',')]
    pub probs: Vec<f64>,
}

/// Flags of `regions`.
#[derive(Debug, Args, Serialize)]
pub struct RegionsArgs {
    /// Dimension 2..8.
    #[arg(long)]
    pub dim: usize,
    /// Print JSON instead of a table.
    #[arg(long)]
    pub json: bool,
}

/// Flags of `measures`.
#[derive(Debug, Args, Serialize)]
pub struct MeasuresArgs {
    /// Input batch (sampler JSON with matrices, or a state-set JSON).
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Bipartition `a×b` (or `axb`); default 2x2.
    #[arg(long, default_value = "2x2")]
    pub split: String,
    /// Comma list from purity_a, concurrence, ln, negativity, dle,
    /// dle_prime, qmi, cmi_zx, discord (discord is expensive).
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "purity_a,concurrence,ln,negativity,dle,dle_prime,qmi,cmi_zx"
    )]
    pub set: Vec<String>,
    /// Output CSV path (default: <out-dir>/measures.csv).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

/// Experiments.
#[derive(Debug, Subcommand)]
pub enum Experiment {
    /// QMI vs CMI_{Z+X} point sets at fixed purities (two qubits).
    CqcScan(ScanArgs),
    /// Entanglement measures of fixed-purity samples (two qubits).
    EntVsPurity(ScanArgs),
    /// Histogram of purities of unconstrained random states.
    HaarHist(HaarArgs),
    /// Purity marginals of the partial-trace induced measure.
    InducedMarginal(InducedArgs),
    /// Maximum two-qubit QMI at fixed purity, with the entropy bound.
    MaxQmiCurve(CurveArgs),
    /// Werner-state negativity, log-negativity and concurrence sweep.
    WernerSweep(WernerArgs),
}

/// Flags of the fixed-purity scans.
#[derive(Debug, Args, Serialize)]
pub struct ScanArgs {
    /// Dimension (4 for two qubits).
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    /// Purities (comma separated).
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.26,0.3,0.35,0.4,0.5,0.6,0.7,0.8,0.9,0.99"
    )]
    pub purities: Vec<f64>,
    /// Samples per purity.
    #[arg(long, default_value_t = 500)]
    pub count: usize,
    /// Seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

/// Flags of `haar-hist`.
#[derive(Debug, Args, Serialize)]
pub struct HaarArgs {
    /// Dimension.
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    /// Number of draws.
    #[arg(long, default_value_t = 100_000)]
    pub count: usize,
    /// Bin width in purity.
    #[arg(long, default_value_t = 0.005)]
    pub bin: f64,
    /// Seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

/// Flags of `induced-marginal`.
#[derive(Debug, Args, Serialize)]
pub struct InducedArgs {
    /// System dimension N (2..4).
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    /// Reservoir dimensions K ≥ N (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "3,6,9")]
    pub reservoir: Vec<usize>,
    /// Curve points.
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

/// Flags of `max-qmi-curve`.
#[derive(Debug, Args, Serialize)]
pub struct CurveArgs {
    /// Dimension (4 for two qubits).
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    /// Curve points.
    #[arg(long, default_value_t = 751)]
    pub points: usize,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

/// Flags of `werner-sweep`.
#[derive(Debug, Args, Serialize)]
pub struct WernerArgs {
    /// Local dimensions (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub d: Vec<usize>,
    /// Grid points in p ∈ [0, 1].
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    /// Also write the states (for `measures --in`).
    #[arg(long)]
    pub emit_states: bool,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

fn run(cli: Cli) -> Result<(), CliError> {
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure {} jobs: {e}", cli.jobs)))?;
    }
    match cli.command {
        Command::Sample(a) => commands::sample(&a),
        Command::Cdf(a) => commands::cdf(&a),
        Command::Invcdf(a) => commands::invcdf(&a),
        Command::Regions(a) => commands::regions(&a),
        Command::Measures(a) => commands::measures(&a),
        Command::Experiment(e) => commands::experiment(&e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fixpur: {e}");
            ExitCode::from(e.code())
        }
    }
}
