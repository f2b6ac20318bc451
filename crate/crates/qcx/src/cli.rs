use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::grid::GridSpec;

#[derive(Debug, Parser)]
#[command(name = "qcx", version, about = "Quasiconformal extensions of integer bijections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Three-point constant and limit class of a sequence.
    Check3pc(SeqArgs),
    /// Splitting decomposition, and the sorting steps for identity tails.
    Split(SeqArgs),
    /// Extend an integer bijection to the plane.
    ExtendAuto(BuildArgs),
    /// Extend an embedding given as image plus assignment.
    ExtendEmbed(BuildArgs),
    /// Extend a bijection of the exponential lattice.
    Explattice(BuildArgs),
    /// Evaluate a map handle at one point.
    Eval(EvalArgs),
    /// Write CSV and SVG of a deformed grid.
    Grid(GridArgs),
    /// Extend and verify a batch of random sequences (seed from QCX_SEED).
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 40)]
    pub horizon: i64,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Where to write the map handle.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 40)]
    pub horizon: i64,
    /// Run the verification checks.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Point as `x,y`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    pub at: (f64, f64),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Output prefix; writes `<out>.csv` and `<out>.svg`.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, allow_hyphen_values = true, default_value = "-4:4:17,-2:2:9")]
    pub grid: GridSpec,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    /// Largest window width.
    #[arg(long, default_value_t = 14)]
    pub width: i64,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[arg(long)]
    pub tol: Option<f64>,
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let (x, y) = s.split_once(',').ok_or("expected x,y")?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(x)?, num(y)?))
}
