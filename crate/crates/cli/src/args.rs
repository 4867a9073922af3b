use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "amn",
    version,
    about = "Exact AMN polynomials, root verification and zero-mode fields"
)]
pub struct Cli {
    /// Worker threads for parallel checks; AMN_THREADS takes precedence.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build P_m in rational and primitive integer form.
    Poly(PolyArgs),
    /// Find the rational roots of P_m and compare with the predicted set.
    Roots(RootsArgs),
    /// Run the exact checks for order m.
    Verify(VerifyArgs),
    /// Emit the ansatz coefficients of one family member.
    Mode(ModeArgs),
    /// Sample ψ, A, h and the zero-mode residual on a cubic grid.
    Field(FieldArgs),
    /// Report build time and coefficient bit length for m = 1…m_max.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(long)]
    pub m: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[arg(long)]
    pub m: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub m: usize,
    /// Also check R_{k−1} ⊆ R_k for every k ≤ m.
    #[arg(long)]
    pub chain: bool,
    /// Also run the rational-root oracle.
    #[arg(long)]
    pub oracle: bool,
    /// Perturb one coefficient of P_m first; the run must fail.
    #[arg(long, hide = true)]
    pub tamper: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    #[value(name = "+")]
    Plus,
    #[value(name = "-")]
    Minus,
}

/// Chooses b₀: `--j`/`--sign`, `--designated` (the default), or `--b0`.
#[derive(Debug, Args)]
pub struct Selector {
    #[arg(long, conflicts_with_all = ["designated", "b0"])]
    pub j: Option<usize>,
    #[arg(
        long,
        value_enum,
        default_value = "+",
        requires = "j",
        allow_hyphen_values = true
    )]
    pub sign: SignArg,
    #[arg(long)]
    pub designated: bool,
    /// Explicit b₀ as "n" or "n/d".
    #[arg(long, conflicts_with = "designated", allow_hyphen_values = true)]
    pub b0: Option<String>,
}

#[derive(Debug, Args)]
pub struct ModeArgs {
    #[arg(long)]
    pub m: usize,
    #[command(flatten)]
    pub selector: Selector,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub m: usize,
    #[command(flatten)]
    pub selector: Selector,
    /// Points per axis.
    #[arg(long, default_value_t = 9)]
    pub grid: usize,
    /// Half-width of the sampled cube.
    #[arg(long, default_value_t = 3.0)]
    pub extent: f64,
    /// Finite-difference step for the residual column.
    #[arg(long, default_value_t = amn_core::field::DEFAULT_STEP)]
    pub step: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub m_max: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}
