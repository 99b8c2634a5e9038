use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use jcpurity::{ModelKind, ModelParams, TimeGrid, DEFAULT_TAIL_BOUND};

use crate::error::{CliError, Result};
use crate::output::Format;

fn finite(s: &str) -> std::result::Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(v) => Err(format!("{v} is not finite")),
        Err(e) => Err(e.to_string()),
    }
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    let v = finite(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{v} must be > 0"))
    }
}

fn nonzero(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn model(s: &str) -> std::result::Result<ModelKind, String> {
    s.parse()
        .map_err(|_| format!("unknown model '{s}' (expected jc or ajc)"))
}

#[derive(Debug, Parser)]
#[command(
    name = "jcpurity",
    version,
    about = "JC / aJC qubit purity and entanglement dynamics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scan one model over a time grid.
    Simulate(SimulateArgs),
    /// Repeat a scan over a list of alpha, beta or f values.
    Sweep(SweepArgs),
    /// Report purity measures for a single Bloch four-vector.
    Quantify(QuantifyArgs),
    /// Evaluate one model at a single time.
    Point(PointArgs),
    /// Compare closed forms against the brute-force oracles.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, default_value = "jc", value_parser = model)]
    pub model: ModelKind,
    /// Coherent-state amplitude.
    #[arg(long, default_value_t = 7.0, value_parser = finite, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Red-sideband detuning delta / g.
    #[arg(long, default_value_t = 0.0, value_parser = finite, allow_negative_numbers = true)]
    pub beta: f64,
    /// Field frequency omega / g.
    #[arg(long, default_value_t = 1e-7, value_parser = finite, allow_negative_numbers = true)]
    pub f: f64,
    #[arg(long, default_value_t = 1.0, value_parser = finite, allow_negative_numbers = true)]
    pub g: f64,
    /// Neglected Poisson tail mass.
    #[arg(long, default_value_t = DEFAULT_TAIL_BOUND, value_parser = positive)]
    pub tail_bound: f64,
}

impl ModelArgs {
    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.model, self.alpha, self.beta, self.f, self.g).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 50.0, value_parser = positive)]
    pub tau_max: f64,
    #[arg(long, default_value_t = 5000, value_parser = nonzero)]
    pub steps: usize,
}

impl GridArgs {
    pub fn grid(&self) -> Result<TimeGrid> {
        TimeGrid::new(self.tau_max, self.steps).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Also write an SVG chart here.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// Columns to plot.
    #[arg(long, value_delimiter = ',', default_value = "tan_phi,concurrence,excitation")]
    pub series: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Check every record against the partial-trace oracle.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Clone, Args)]
#[group(id = "sweep_values", required = true, multiple = false, args = ["alpha_list", "beta_list", "f_list"])]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Base path; one file per value is written as `<stem>_<param>_<value>.<ext>`.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Base path for one SVG per value.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "tan_phi,concurrence,excitation")]
    pub series: Vec<String>,
    #[arg(long, value_delimiter = ',', value_parser = finite, allow_negative_numbers = true)]
    pub alpha_list: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', value_parser = finite, allow_negative_numbers = true)]
    pub beta_list: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', value_parser = finite, allow_negative_numbers = true)]
    pub f_list: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct QuantifyArgs {
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub r0: f64,
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub r1: f64,
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub r2: f64,
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub r3: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_parser = finite)]
    pub tau: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Random dynamics configurations to check.
    #[arg(long, default_value_t = 64, value_parser = nonzero)]
    pub samples: usize,
    #[arg(long, default_value_t = 20220410)]
    pub seed: u64,
    /// Override both comparison tolerances.
    #[arg(long, value_parser = positive)]
    pub tolerance: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_TAIL_BOUND, value_parser = positive)]
    pub tail_bound: f64,
}

pub fn parse_args<I, T>(argv: I) -> std::result::Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv)
}
