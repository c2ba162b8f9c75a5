use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "glauber", version, about = "Glauber dynamics for the ferromagnetic Ising model", args_override_self = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Master seed; required by every stochastic command.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output path; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Size cap for exact enumeration and transition matrices (free vertices).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Key-value config file; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Exact Gibbs distribution, spectrum and mixing time of a small instance.
    Exact(ExactArgs),
    /// Self-avoiding-walk tree marginals and spatial-mixing influences.
    Saw(SawArgs),
    /// Grand-coupling runs on one instance.
    Couple(CoupleArgs),
    /// Coupling-time scans over size and temperature grids.
    Scan(ScanArgs),
    /// Check Vol/LM/SM and issue a mixing-time certificate.
    Certify(CertifyArgs),
    /// Exact cut-width, tree bound, or Galton-Watson statistics.
    Cutwidth(CutwidthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Er,
    Regular,
    Gw,
    Cycle,
    Path,
    Star,
    Grid,
    Complete,
    File,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    /// Degree (regular), mean degree (er, gw).
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    /// Uniform external field.
    #[arg(long, default_value_t = 0.0)]
    pub field: f64,
    /// Generations of a Galton-Watson tree.
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    /// Source file for `--family file`.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct SawArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Root vertex; all vertices when absent.
    #[arg(long)]
    pub vertex: Option<usize>,
    /// Report influence bounds of the sphere at this radius.
    #[arg(long)]
    pub radius: Option<usize>,
    /// Also compute exact influences by enumeration.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Discrete,
    Continuous,
}

#[derive(Debug, Args)]
pub struct CoupleArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub replicas: u64,
    /// Horizon cap (updates in discrete mode, time in continuous mode).
    #[arg(long)]
    pub horizon: f64,
    #[arg(long, value_enum, default_value_t = Mode::Discrete)]
    pub mode: Mode,
    /// First checkpoint of a geometric grid.
    #[arg(long)]
    pub checkpoint_first: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    pub checkpoint_ratio: f64,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Comma-separated sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long)]
    pub d: Option<f64>,
    /// Comma-separated inverse temperatures.
    #[arg(long, value_delimiter = ',', conflicts_with = "ratio")]
    pub beta: Vec<f64>,
    /// Comma-separated values of `(d-1) tanh(beta)`.
    #[arg(long, value_delimiter = ',')]
    pub ratio: Vec<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub field: f64,
    #[arg(long, default_value_t = 1)]
    pub replicas: u64,
    /// Horizon cap per replica.
    #[arg(long)]
    pub horizon: f64,
    #[arg(long, value_enum, default_value_t = Mode::Discrete)]
    pub mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LmArg {
    Exact,
    Extremal,
    Cutwidth,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Ball radius, or `auto` for the smallest radius passing SM everywhere.
    #[arg(long = "R", alias = "radius", default_value = "auto")]
    pub radius: String,
    #[arg(long, value_enum, default_value_t = LmArg::Exact)]
    pub lm: LmArg,
    /// Evaluate every condition at every vertex even after a failure.
    #[arg(long)]
    pub full_report: bool,
    /// Test against the explicit volume and local-mixing constants for the
    /// maximum degree (radius from the threshold inequality).
    #[arg(long)]
    pub theorem1: bool,
}

#[derive(Debug, Args)]
pub struct CutwidthArgs {
    #[arg(long, group = "what")]
    pub exact: bool,
    #[arg(long, group = "what")]
    pub tree_bound: bool,
    /// Galton-Watson statistics: `--gw D DEPTH SAMPLES`.
    #[arg(long, group = "what", num_args = 3, value_names = ["D", "DEPTH", "SAMPLES"])]
    pub gw: Option<Vec<f64>>,
    /// Order-statistic variable `W`: `--order-stat D SAMPLES`.
    #[arg(long, group = "what", num_args = 2, value_names = ["D", "SAMPLES"])]
    pub order_stat: Option<Vec<f64>>,
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Include witness orderings.
    #[arg(long)]
    pub with_ordering: bool,
    /// Largest tree for which the exact cut-width is also computed.
    #[arg(long, default_value_t = 12)]
    pub exact_cap: usize,
    /// With `--gw`, run every depth from 1 to DEPTH and fit the mean.
    #[arg(long)]
    pub sweep: bool,
}
