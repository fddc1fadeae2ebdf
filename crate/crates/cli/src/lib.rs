//! Command-line frontend `msf`.
//!
//! Subcommands generate banks and test inputs, build product filters, run
//! Bauer factorization and size sweeps, recover banks from factors, compute
//! bank metrics, and run multiwavelet transforms and denoising. Each command
//! writes its artifact to `--out` (stdout when omitted) and, with the global
//! `--report <path>` flag, a JSON run report.
//!
//! Exit codes: 0 success, 1 usage error, 2 numeric failure, 3 I/O error.

mod commands;
pub mod docs;
pub mod error;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use error::{CliError, Result};

/// Top-level arguments.
#[derive(Debug, Parser)]
#[command(
    name = "msf",
    version,
    about = "Matrix spectral factorization and multiwavelet toolkit"
)]
pub struct Cli {
    /// Write a JSON run report to this path.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Include the wall time in the run report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Subcommand to run.
    #[command(subcommand)]
    pub command: Command,
}

/// Available subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a filter bank, a test signal or a test image.
    Gen(GenArgs),
    /// Build the product filter `H(z)H*(z)` of a bank's lowpass.
    Product(ProductArgs),
    /// Bauer spectral factor of a product filter at one block size.
    Factorize(FactorizeArgs),
    /// Factor, recover and score a product filter over many block sizes.
    Sweep(SweepArgs),
    /// Recover an SA4-type bank from a spectral factor.
    Recover(RecoverArgs),
    /// Compute bank metrics.
    Analyze(AnalyzeArgs),
    /// Multi-level decomposition and reconstruction of a signal or image.
    Transform(TransformArgs),
    /// Add seeded Gaussian noise to an image and denoise it.
    Denoise(DenoiseArgs),
}

/// Parametric families accepted by `gen --family`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// The SA4 family with parameter `--t`.
    Sa4,
}

/// Synthetic images accepted by `gen --image`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ImageKind {
    /// Deterministic piecewise-smooth scene.
    Synthetic,
    /// Uniform random samples drawn with `--seed`.
    Random,
}

/// PGM encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PgmKind {
    /// `P2`.
    Ascii,
    /// `P5`.
    Binary,
}

/// Arguments of `gen`.
#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["family", "name", "signal", "image"]))]
pub struct GenArgs {
    /// Parametric family.
    #[arg(long, value_enum, requires = "t")]
    pub family: Option<Family>,
    /// Family parameter.
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// Builtin bank: sa4, ghm, cl or haar-scalar.
    #[arg(long)]
    pub name: Option<String>,
    /// Test signal: cusp, hisine, losine, piece-regular or piece-polynomial.
    #[arg(long)]
    pub signal: Option<String>,
    /// Test signal length, a power of two.
    #[arg(long, default_value_t = 128)]
    pub length: usize,
    /// Test image kind.
    #[arg(long, value_enum)]
    pub image: Option<ImageKind>,
    /// Test image side length.
    #[arg(long, default_value_t = 256)]
    pub size: usize,
    /// Seed for random images.
    #[arg(long, default_value_t = msf_mwt::experiments::DEFAULT_SEED)]
    pub seed: u64,
    /// PGM encoding of generated images.
    #[arg(long, value_enum, default_value_t = PgmKind::Binary)]
    pub format: PgmKind,
    /// Output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub compare: CompareArgs,
}

/// Golden-document comparison flags.
#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Compare the produced document against this golden document.
    #[arg(long)]
    pub compare: Option<PathBuf>,
    /// Per-cell absolute tolerance of `--compare`.
    #[arg(long, default_value_t = 1e-12)]
    pub compare_tol: f64,
}

/// Arguments of `product`.
#[derive(Debug, Args)]
pub struct ProductArgs {
    /// Bank document path or builtin name.
    #[arg(long)]
    pub bank: String,
    /// Output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub compare: CompareArgs,
}

/// Arguments of `factorize`.
#[derive(Debug, Args)]
pub struct FactorizeArgs {
    /// Product document.
    #[arg(long)]
    pub product: PathBuf,
    /// Block size `f`.
    #[arg(long)]
    pub size: usize,
    /// Print the residual `ΔP` to stderr.
    #[arg(long)]
    pub report_residual: bool,
    /// Emit the singular values of the dense Toeplitz matrix as CSV.
    #[arg(long)]
    pub singular_values: bool,
    /// Destination of the singular-value CSV (stdout when omitted).
    #[arg(long, requires = "singular_values")]
    pub sv_out: Option<PathBuf>,
    /// Output path of the factor document.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub compare: CompareArgs,
}

/// Recovery pipelines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Magnitude averaging with the sign template.
    Approx,
    /// Angle estimate, reflection and pair averaging.
    Exact,
}

/// Outputs of the exact pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    /// Reflected factor.
    Rotated,
    /// Reflected factor with mirrored pairs averaged.
    Averaged,
}

/// Arguments of `sweep`.
#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Product document.
    #[arg(long)]
    pub product: PathBuf,
    /// Sizes: `a..b` (inclusive), single values, comma separated.
    #[arg(long)]
    pub sizes: String,
    /// Recovery pipeline applied at every size.
    #[arg(long, value_enum, default_value_t = Method::Approx)]
    pub recover: Method,
    /// Reference bank for the error columns.
    #[arg(long)]
    pub reference: Option<String>,
    /// Output CSV path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Arguments of `recover`.
#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["product", "factor"]))]
pub struct RecoverArgs {
    /// Product document, factored at `--size`.
    #[arg(long, requires = "size")]
    pub product: Option<PathBuf>,
    /// Block size `f`.
    #[arg(long)]
    pub size: Option<usize>,
    /// Factor document written by `factorize`.
    #[arg(long)]
    pub factor: Option<PathBuf>,
    /// Recovery pipeline.
    #[arg(long, value_enum)]
    pub method: Method,
    /// Which exact output to write.
    #[arg(long, value_enum, default_value_t = Variant::Averaged)]
    pub variant: Variant,
    /// Reference bank for the error ledger.
    #[arg(long)]
    pub reference: Option<String>,
    /// Output path of the recovered bank document.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub compare: CompareArgs,
}

/// Metrics accepted by `analyze --metrics`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Metric {
    /// Coding gain.
    Cg,
    /// Sobolev regularity.
    Sobolev,
    /// GMP order (1,1,1).
    Gmp,
    /// Approximation order.
    Order,
    /// Balance order.
    Balance,
    /// Frequency-response table.
    Freq,
    /// Component symmetry.
    Symmetry,
}

/// Arguments of `analyze`.
#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Bank document path or builtin name.
    #[arg(long)]
    pub bank: String,
    /// Metrics to compute.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Metric::Cg, Metric::Sobolev, Metric::Gmp, Metric::Order, Metric::Balance, Metric::Symmetry])]
    pub metrics: Vec<Metric>,
    /// AR(1) correlation of the coding-gain input model.
    #[arg(long, default_value_t = msf_analysis::DEFAULT_RHO)]
    pub rho: f64,
    /// Largest approximation order tested.
    #[arg(long, default_value_t = 6)]
    pub p_max: usize,
    /// Largest balance order tested.
    #[arg(long, default_value_t = 3)]
    pub q_max: usize,
    /// Singular-value and residual tolerance of the order and balance tests.
    #[arg(long, default_value_t = msf_analysis::ORDER_TOL)]
    pub order_tol: f64,
    /// Residual tolerance of the GMP test.
    #[arg(long, default_value_t = msf_analysis::GMP_TOL)]
    pub gmp_tol: f64,
    /// Number of frequency grid points on `[0, π]`.
    #[arg(long, default_value_t = 65)]
    pub grid: usize,
    /// Plot-ready CSV of the frequency response.
    #[arg(long)]
    pub freq_out: Option<PathBuf>,
    /// Output path of the report.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Prefilters for `transform` and `denoise`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrefilterKind {
    /// Haar matrix `Q`.
    Haar,
    /// No mixing.
    Identity,
}

/// Transform input and bank flags.
#[derive(Debug, Args)]
pub struct TransformCommon {
    /// Input `.csv` signal or `.pgm` image.
    #[arg(long)]
    pub input: PathBuf,
    /// Bank document path or builtin name.
    #[arg(long)]
    pub bank: String,
    /// Number of levels `J`.
    #[arg(long)]
    pub levels: usize,
    /// Prefilter; defaults to Haar for r = 2 and identity otherwise.
    #[arg(long, value_enum)]
    pub prefilter: Option<PrefilterKind>,
    /// Shorthand for `--prefilter haar`.
    #[arg(long, conflicts_with = "prefilter")]
    pub balanced: bool,
    /// Output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Arguments of `transform`.
#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub common: TransformCommon,
    /// Write the coefficient dump of a 1D input at `J` levels.
    #[arg(long)]
    pub coefficients: Option<PathBuf>,
}

/// Arguments of `denoise`.
#[derive(Debug, Args)]
pub struct DenoiseArgs {
    #[command(flatten)]
    pub common: TransformCommon,
    /// Standard deviation of the added noise.
    #[arg(long, default_value_t = 10.0)]
    pub sigma: f64,
    /// Noise seed.
    #[arg(long, default_value_t = msf_mwt::experiments::DEFAULT_SEED)]
    pub seed: u64,
    /// Threshold scale; estimated from the finest details when omitted.
    #[arg(long)]
    pub threshold_sigma: Option<f64>,
    /// Also write the noisy image.
    #[arg(long)]
    pub noisy_out: Option<PathBuf>,
    /// PGM encoding of the written images.
    #[arg(long, value_enum, default_value_t = PgmKind::Binary)]
    pub format: PgmKind,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn main_with_args(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let echo = args.into_iter().skip(1).collect();
    match commands::run(cli, echo) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("msf: {e}");
            e.exit_code()
        }
    }
}
