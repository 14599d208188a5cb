use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use xy_quench::{Measure, MomentumGrid};

use crate::config::{List, Range, Window};
use crate::output::Format;

/// Sudden-quench dynamics of the transverse-field XY chain.
///
/// Every option can also be given in a `key = value` file passed with
/// `--config`; command-line flags take precedence.
#[derive(Debug, Parser)]
#[command(name = "xyquench", version, about)]
pub struct Cli {
    /// Plain-text `key = value` defaults (keys are long flag names).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the measures on a (t × h1) grid.
    Sweep(SweepArgs),
    /// Evaluate the measures along time for a single quench.
    Series(SeriesArgs),
    /// Detect first revivals over several chain sizes and fit t_r = τ_r N + b.
    Revival(RevivalArgs),
    /// Run the oracle, exact-diagonalisation and limit suites.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ModelArgs {
    /// Anisotropy γ [default: 1]
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Exchange coupling J [default: 1]
    #[arg(long)]
    pub j: Option<f64>,
    /// Number of sites (even) [default: 100]
    #[arg(long)]
    pub n: Option<usize>,
    /// Pre-quench field [default: 0.7]
    #[arg(long)]
    pub h0: Option<f64>,
    /// Post-quench field [default: 1]
    #[arg(long)]
    pub h1: Option<f64>,
    /// Momentum grid: cyclic or antiperiodic [default: cyclic]
    #[arg(long)]
    pub grid: Option<MomentumGrid>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// csv or json [default: csv]
    #[arg(long)]
    pub format: Option<Format>,
    /// Worker threads (0 = all cores) [default: 0]
    #[arg(long, env = "XYQUENCH_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Field grid `min:max:count-or-step` [default: 0:2:41]
    #[arg(long)]
    pub h1_range: Option<Range>,
    /// Time grid `min:max:count-or-step` [default: 0:30:0.1]
    #[arg(long)]
    pub t_range: Option<Range>,
    /// Comma-separated subset of c_l1, c_re, mrq [default: all]
    #[arg(long)]
    pub measures: Option<List<Measure>>,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Time grid `min:max:count-or-step` [default: 0:30:0.1]
    #[arg(long)]
    pub t_range: Option<Range>,
    /// Comma-separated subset of c_l1, c_re, mrq [default: all]
    #[arg(long)]
    pub measures: Option<List<Measure>>,
}

#[derive(Debug, Args)]
pub struct RevivalArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Comma-separated chain sizes (at least three).
    #[arg(long)]
    pub sizes: Option<List<usize>>,
    /// Time step of the series [default: 0.05]
    #[arg(long)]
    pub dt: Option<f64>,
    /// Calibration window as fractions of N, `lo:hi` [default: 0.05:0.15]
    #[arg(long)]
    pub calibration: Option<Window>,
    /// Search window as fractions of N, `lo:hi` [default: 0.15:0.4]
    #[arg(long)]
    pub search: Option<Window>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Seed for the random-state suite [default: 1]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of random X-states [default: 500]
    #[arg(long)]
    pub states: Option<usize>,
    /// Chain sizes for the exact-diagonalisation suites [default: 8,10,12]
    #[arg(long)]
    pub ed_sizes: Option<List<usize>>,
}
