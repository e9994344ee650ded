use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use volpow::asymptotics::RegimeSpec;
use volpow::complex::ComplexKind;
use volpow::geometry::WindowKind;

#[derive(Debug, Parser)]
#[command(name = "volpow", version, about = "Volume-power functionals of random Rips and Čech complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run replications and compare with the leading-order predictions.
    Simulate(Common),
    /// Estimate the constants the given specs need and cache them.
    Moments {
        #[command(flatten)]
        common: Common,
        /// Monte Carlo samples per constant.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
    /// Print expectations, covariances, limit matrices and rate shapes.
    Predict(Common),
    /// Sweep KS distances to the normal law over the given intensities.
    Clt(Common),
    /// Check Čech(δ) ⊆ Rips(δ) ⊆ Čech(rδ) and compare f-vectors.
    Compare(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WindowArg {
    Cube,
    Ball,
}

impl From<WindowArg> for WindowKind {
    fn from(w: WindowArg) -> Self {
        match w {
            WindowArg::Cube => WindowKind::UnitCube,
            WindowArg::Ball => WindowKind::UnitVolumeBall,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComplexArg {
    Rips,
    Cech,
    Both,
}

impl ComplexArg {
    pub fn kinds(self) -> Vec<ComplexKind> {
        match self {
            ComplexArg::Rips => vec![ComplexKind::Rips],
            ComplexArg::Cech => vec![ComplexKind::Cech],
            ComplexArg::Both => vec![ComplexKind::Rips, ComplexKind::Cech],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, value_enum, default_value_t = WindowArg::Cube)]
    pub window: WindowArg,
    /// Intensity; `clt` accepts a comma-separated list.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub t: Vec<f64>,
    #[arg(long, conflicts_with = "regime")]
    pub delta: Option<f64>,
    /// Schedule `a,beta` giving δ = a·t^(−beta).
    #[arg(long, value_parser = parse_regime)]
    pub regime: Option<RegimeSpec>,
    /// Functionals as `k:alpha[,k:alpha...]`.
    #[arg(long, default_value = "1:0")]
    pub spec: String,
    #[arg(long, value_enum, default_value_t = ComplexArg::Rips)]
    pub complex: ComplexArg,
    #[arg(long, default_value_t = 100)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub moments_cache: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

fn parse_regime(s: &str) -> Result<RegimeSpec, String> {
    s.parse().map_err(|e: volpow::Error| e.to_string())
}
