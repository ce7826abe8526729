//! Experiment driver for the spherical summation library.
//!
//! Each subcommand runs one experiment: defaults, then an optional
//! `key=value` config file, then per-key command-line overrides. Results
//! land in the output directory as `config.txt` (the exact configuration
//! echoed back), `report.csv` (metric rows), `summary.csv` (pass/fail
//! criteria), plus experiment-specific data files. The process exits 0
//! exactly when every criterion in the summary passed.

mod config;
mod experiments;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use crate::config::{ExperimentConfig, ExperimentKind};

#[derive(Parser)]
#[command(
    name = "flaplace",
    version,
    about = "Summability experiments for spherical harmonic expansions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kernel size against its bound envelope, kernel mass normalization,
    /// and quadrature self-checks.
    KernelBounds(RunArgs),
    /// Convergence of summation means to smooth, band-limited, and jump
    /// targets.
    Converge(RunArgs),
    /// Maximal-operator ratios across bandwidths, antipodal domination,
    /// and grid-refinement stability.
    MaximalIneq(RunArgs),
    /// The telescoped tail-bound series and its convergence dichotomy.
    TnSeries(RunArgs),
    /// Kernel-form and operator-form identities for the composite
    /// smoothing means.
    AbelIdentity(RunArgs),
    /// Dump one kernel over an angle grid, optionally with its envelope.
    DumpKernel(RunArgs),
}

impl Command {
    fn split(&self) -> (ExperimentKind, &RunArgs) {
        match self {
            Command::KernelBounds(a) => (ExperimentKind::KernelBounds, a),
            Command::Converge(a) => (ExperimentKind::Converge, a),
            Command::MaximalIneq(a) => (ExperimentKind::MaximalIneq, a),
            Command::TnSeries(a) => (ExperimentKind::TnSeries, a),
            Command::AbelIdentity(a) => (ExperimentKind::AbelIdentity, a),
            Command::DumpKernel(a) => (ExperimentKind::DumpKernel, a),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Config file of key=value lines layered over the defaults.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory; falls back to $FLAPLACE_OUT/<experiment>.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
}

/// Each config key doubles as a long flag; values use the same spellings
/// as the config file.
#[derive(Args)]
struct Overrides {
    #[arg(long, value_name = "N")]
    dim_n: Option<String>,
    #[arg(long, value_name = "NAME")]
    method: Option<String>,
    #[arg(long, value_name = "X")]
    alpha: Option<String>,
    #[arg(long, value_name = "X")]
    tau: Option<String>,
    #[arg(long, value_name = "N")]
    n_max: Option<String>,
    #[arg(long, value_name = "N")]
    reference_factor: Option<String>,
    #[arg(long, value_name = "NAME")]
    test_function: Option<String>,
    #[arg(long, value_name = "N")]
    seed: Option<String>,
    #[arg(long, value_name = "N")]
    band_limit: Option<String>,
    #[arg(long, value_name = "X")]
    heat_t: Option<String>,
    #[arg(long, value_name = "X")]
    cap_radius: Option<String>,
    #[arg(long, value_name = "X")]
    smoothness: Option<String>,
    #[arg(long, value_name = "N")]
    angle_count: Option<String>,
    #[arg(long, value_name = "N|auto")]
    quad_nodes: Option<String>,
    #[arg(long, value_name = "X")]
    gamma_min: Option<String>,
    #[arg(long, value_name = "NAME")]
    spectrum: Option<String>,
    #[arg(long, value_name = "NAME")]
    liouville_exponent: Option<String>,
    #[arg(long, value_name = "N")]
    ensemble: Option<String>,
    #[arg(long, value_name = "LIST")]
    bandwidths: Option<String>,
    #[arg(long, value_name = "N")]
    radii_count: Option<String>,
    #[arg(long, value_name = "X")]
    radius_min: Option<String>,
    #[arg(long, value_name = "N")]
    eval_count: Option<String>,
    #[arg(long, value_name = "N")]
    polar_nodes: Option<String>,
    #[arg(long, value_name = "N")]
    azimuth_nodes: Option<String>,
    #[arg(long, value_name = "LIST|dyadic")]
    degree_grid: Option<String>,
    #[arg(long, value_name = "BOOL")]
    envelope: Option<String>,
    #[arg(long, value_name = "X")]
    tol_identity: Option<String>,
    #[arg(long, value_name = "X")]
    tol_normalization: Option<String>,
    #[arg(long, value_name = "X")]
    tol_envelope_variation: Option<String>,
    #[arg(long, value_name = "X")]
    tol_cauchy: Option<String>,
    #[arg(long, value_name = "X")]
    divergence_floor: Option<String>,
    #[arg(long, value_name = "X")]
    tol_converge: Option<String>,
    #[arg(long, value_name = "X")]
    gibbs_floor: Option<String>,
    #[arg(long, value_name = "X")]
    tol_away: Option<String>,
    #[arg(long, value_name = "X")]
    ratio_factor: Option<String>,
    #[arg(long, value_name = "X")]
    tol_refinement: Option<String>,
    #[arg(long, value_name = "X")]
    tol_quadrature: Option<String>,
}

impl Overrides {
    fn pairs(&self) -> Vec<(&'static str, &str)> {
        let entries: [(&'static str, &Option<String>); 37] = [
            ("dim_n", &self.dim_n),
            ("method", &self.method),
            ("alpha", &self.alpha),
            ("tau", &self.tau),
            ("n_max", &self.n_max),
            ("reference_factor", &self.reference_factor),
            ("test_function", &self.test_function),
            ("seed", &self.seed),
            ("band_limit", &self.band_limit),
            ("heat_t", &self.heat_t),
            ("cap_radius", &self.cap_radius),
            ("smoothness", &self.smoothness),
            ("angle_count", &self.angle_count),
            ("quad_nodes", &self.quad_nodes),
            ("gamma_min", &self.gamma_min),
            ("spectrum", &self.spectrum),
            ("liouville_exponent", &self.liouville_exponent),
            ("ensemble", &self.ensemble),
            ("bandwidths", &self.bandwidths),
            ("radii_count", &self.radii_count),
            ("radius_min", &self.radius_min),
            ("eval_count", &self.eval_count),
            ("polar_nodes", &self.polar_nodes),
            ("azimuth_nodes", &self.azimuth_nodes),
            ("degree_grid", &self.degree_grid),
            ("envelope", &self.envelope),
            ("tol_identity", &self.tol_identity),
            ("tol_normalization", &self.tol_normalization),
            ("tol_envelope_variation", &self.tol_envelope_variation),
            ("tol_cauchy", &self.tol_cauchy),
            ("divergence_floor", &self.divergence_floor),
            ("tol_converge", &self.tol_converge),
            ("gibbs_floor", &self.gibbs_floor),
            ("tol_away", &self.tol_away),
            ("ratio_factor", &self.ratio_factor),
            ("tol_refinement", &self.tol_refinement),
            ("tol_quadrature", &self.tol_quadrature),
        ];
        entries
            .iter()
            .filter_map(|(k, v)| v.as_deref().map(|v| (*k, v)))
            .collect()
    }
}

fn run(kind: ExperimentKind, args: &RunArgs) -> Result<bool> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            ExperimentConfig::parse(kind, &text)
                .with_context(|| format!("parsing config {}", path.display()))?
        }
        None => ExperimentConfig::default_for(kind),
    };
    for (key, value) in args.overrides.pairs() {
        cfg.set(key, value)
            .with_context(|| format!("override --{}", key.replace('_', "-")))?;
    }
    let out = match &args.out {
        Some(p) => p.clone(),
        None => match std::env::var_os("FLAPLACE_OUT") {
            Some(root) => PathBuf::from(root).join(kind.name()),
            None => bail!("no output directory: pass --out or set FLAPLACE_OUT"),
        },
    };
    let report = experiments::run(kind, &cfg, &out)?;
    for line in report.verdict_lines() {
        println!("{line}");
    }
    println!("wrote {}", out.join("report.csv").display());
    println!("wrote {}", out.join("summary.csv").display());
    Ok(report.all_pass())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = cli.command.split();
    match run(kind, args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
