// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "scx", version, about = "Weak- and strong-coupling expansion experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scalar toy problems: geometric iteration and the I_n recurrence.
    #[command(subcommand)]
    Demo(Demo),
    /// Exact propagator or Dyson partial sums at one time.
    Propagate(PropagateArgs),
    /// Strong-coupling series along a user grid.
    Strong(StrongArgs),
    /// Mean-value defect at a candidate time, or the optimal time.
    Mvt(MvtArgs),
    /// Coupling sweep with a term-scaling or order-error probe.
    Sweep(SweepArgs),
}

#[derive(Debug, Subcommand)]
pub enum Demo {
    Geometric(GeometricArgs),
    Recursion(RecursionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Weak,
    Strong,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct GeometricArgs {
    #[arg(long)]
    pub a: f64,
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    #[arg(long)]
    pub terms: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Forward,
    Backward,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct RecursionArgs {
    #[arg(long, value_enum)]
    pub direction: DirectionArg,
    #[arg(long)]
    pub start: u32,
    /// Seed value at --start (default: 1 − e⁻¹ forward, 0 backward).
    #[arg(long)]
    pub seed: Option<f64>,
    #[arg(long)]
    pub stop: u32,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Dyson,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct PropagateArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long, value_enum)]
    pub method: MethodArg,
    /// Highest Dyson order (dyson only).
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    #[arg(long)]
    pub t: f64,
    /// Start time (default: window start).
    #[arg(long)]
    pub t0: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeedModeArg {
    Exact,
    Value,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct StrongArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Descending times t_1,…,t_{n−1} at which L is evaluated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub grid: Vec<f64>,
    /// Target time t_n.
    #[arg(long)]
    pub target: f64,
    #[arg(long, value_enum)]
    pub seed_mode: SeedModeArg,
    /// Seed u(t_1) = (re + i·im)·I for --seed-mode value.
    #[arg(long)]
    pub seed_re: Option<f64>,
    #[arg(long)]
    pub seed_im: Option<f64>,
    #[arg(long)]
    pub t0: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct MvtArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub tk: f64,
    /// Candidate time; omitted, the optimal time is searched for.
    #[arg(long)]
    pub candidate: Option<f64>,
    #[arg(long)]
    pub t0: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParamArg {
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProbeArg {
    TermScaling,
    OrderError,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long, value_enum)]
    pub param: ParamArg,
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub values: Vec<f64>,
    #[arg(long, value_enum)]
    pub probe: ProbeArg,
    /// term-scaling: L times (default: six evenly spaced times ending at the window end).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub grid: Option<Vec<f64>>,
    /// term-scaling: target time (default: half the smallest grid time past t0).
    #[arg(long)]
    pub target: Option<f64>,
    /// order-error: evaluation time (default: window start + 1, clipped to the window).
    #[arg(long)]
    pub t: Option<f64>,
    /// order-error: highest Dyson order.
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}
