//! Argument surface of the `pascube` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "pascube",
    version,
    about = "Exact Pascal's cube coefficients, pyramid layers, the trinomial layer walk, and its diffusion check"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format for layer, walk, and heat reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Seed for the walk simulator.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one coefficient by the chosen route or by all of them.
    Coeff(CoeffArgs),
    /// Print one pyramid layer, optionally with its cube coordinates.
    Layer(LayerArgs),
    /// Run exhaustive identity sweeps and report checked/failed counts.
    Verify(VerifyArgs),
    /// Emit the exact walk distribution, a simulated histogram, or both.
    Walk(WalkArgs),
    /// Report diffusion residuals of the slice distribution over time.
    Heat(HeatArgs),
}

#[derive(Debug, Args)]
pub struct CoeffArgs {
    /// Superscript a.
    #[arg(short, long, allow_negative_numbers = true)]
    pub a: i64,

    /// Subscript b; values outside 0..=a yield 0.
    #[arg(short, long, allow_negative_numbers = true)]
    pub b: i64,

    /// Layer c; the base layer c = 0 is the ordinary Pascal triangle.
    #[arg(short, long, allow_negative_numbers = true)]
    pub c: i64,

    /// Evaluation route; `all` prints every route and a verdict line.
    #[arg(long, value_enum, default_value_t = Route::Closed)]
    pub route: Route,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Rec,
    Closed,
    Conv,
    All,
}

#[derive(Debug, Args)]
pub struct LayerArgs {
    /// Layer number, starting at 1 for the apex.
    #[arg(short, long)]
    pub n: u64,

    /// Plain pyramid rows, or rows annotated with cube coordinates.
    #[arg(long, value_enum, default_value_t = Target::Pyramid)]
    pub target: Target,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Pyramid,
    CubeSlice,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Which identity sweep to run.
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,

    /// Largest superscript a in the coefficient sweeps.
    #[arg(long, default_value_t = 15)]
    pub a_max: u64,

    /// Largest layer c in the coefficient sweeps.
    #[arg(long, default_value_t = 15)]
    pub c_max: u64,

    /// Largest pyramid layer in the layer-sum sweep.
    #[arg(short = 'n', long, default_value_t = 25)]
    pub n_max: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Routes,
    Symmetry,
    Layersum,
    Convolution,
    All,
}

#[derive(Debug, Args)]
pub struct WalkArgs {
    /// Time parameter; the walk takes 3t steps.
    #[arg(short, long)]
    pub t: u64,

    /// Number of simulated walks for the empirical histogram.
    #[arg(short = 'N', long, default_value_t = 10_000)]
    pub num_walks: u64,

    /// What to emit; `both` also reports the total-variation distance.
    #[arg(long, value_enum, default_value_t = Emit::Exact)]
    pub emit: Emit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Exact,
    Empirical,
    Both,
}

#[derive(Debug, Args)]
pub struct HeatArgs {
    /// Comma-separated times to sweep; sorted and deduplicated.
    #[arg(
        long = "t",
        value_delimiter = ',',
        required = true,
        value_name = "T,..."
    )]
    pub times: Vec<u64>,

    /// Half-width of the position window around the center.
    #[arg(long, default_value_t = 0)]
    pub window: u64,
}
