use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "velu-dual",
    version,
    about = "Vélu isogenies, separable decomposition and dual isogenies over small finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Human-readable report instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the normalized isogeny with a given kernel.
    Velu(MapSource),
    /// Compute the dual isogeny and its certificate.
    Dual(MapSource),
    /// Split a map into separable part and Frobenius power.
    Decompose(MapSource),
    /// The multiplication-by-m endomorphism as rational maps.
    MulMap(MulArgs),
    /// Re-check a dual certificate, or a (phi, dual) pair.
    Verify(VerifyArgs),
    /// Evaluate a map at a point.
    Eval(EvalArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct CurveArgs {
    /// Field characteristic (prime, at least 5).
    #[arg(long)]
    pub p: Option<u64>,
    /// Extension degree of the base field.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Coefficient a; comma-separated base-p digits when k > 1.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Coefficient b; comma-separated base-p digits when k > 1.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct KernelArgs {
    /// Kernel generator `x,y` (for k > 1: `x-digits;y-digits`).
    #[arg(long, value_name = "POINT")]
    pub kernel_gen: Option<String>,
    /// Kernel polynomial coefficients `c0,c1,...` (for k > 1 separate
    /// coefficients with `;` and digits with `,`).
    #[arg(long, value_name = "COEFFS")]
    pub kernel_poly: Option<String>,
    /// Explicit kernel point; repeat for every point of the subgroup.
    #[arg(long, value_name = "POINT")]
    pub kernel_point: Vec<String>,
}

/// Where a map comes from: a JSON file, or a curve and a kernel.
#[derive(Args, Debug, Clone)]
pub struct MapSource {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[command(flatten)]
    pub kernel: KernelArgs,
    /// Read the map from an isogeny JSON file instead.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["p", "kernel_gen", "kernel_poly", "kernel_point"])]
    pub map: Option<PathBuf>,
    /// Precompose with the n-th power of Frobenius (curves over F_p only).
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub frobenius: u32,
}

#[derive(Args, Debug, Clone)]
pub struct MulArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    /// The multiplier.
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Certificate JSON produced by `dual`.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["phi", "dual", "batch"])]
    pub cert: Option<PathBuf>,
    /// Isogeny JSON for phi.
    #[arg(long, value_name = "FILE", requires = "dual")]
    pub phi: Option<PathBuf>,
    /// Isogeny JSON for the claimed dual.
    #[arg(long, value_name = "FILE", requires = "phi")]
    pub dual: Option<PathBuf>,
    /// JSON array of certificates, checked concurrently.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["phi", "dual"])]
    pub batch: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct EvalArgs {
    #[command(flatten)]
    pub source: MapSource,
    /// The point `x,y` (for k > 1: `x-digits;y-digits`), or `infinity`.
    #[arg(long, value_name = "POINT")]
    pub point: String,
}
