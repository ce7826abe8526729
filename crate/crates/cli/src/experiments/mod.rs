//! The six experiment runners. Each takes a resolved configuration and an
//! output directory, writes its data CSVs there, and returns the metric
//! rows plus acceptance-criterion verdicts for report.csv / summary.csv.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use fourier_laplace::quadrature::sin_power_integral;
use fourier_laplace::spectral::{
    bandlimited_random, cap_function, heat_function, regularity_function, ZonalFunction,
};
use fourier_laplace::{QuadratureRule, SphereContext};

use crate::config::{ExperimentConfig, ExperimentKind, TestFunctionKind};
use crate::report::ExperimentReport;

mod abel_identity;
mod converge;
mod dump_kernel;
mod kernel_bounds;
mod maximal_ineq;
mod tn_series;

/// Dispatch one run: echo the exact configuration, run the experiment,
/// write report.csv and summary.csv.
pub fn run(kind: ExperimentKind, cfg: &ExperimentConfig, out: &Path) -> Result<ExperimentReport> {
    fs::create_dir_all(out)
        .with_context(|| format!("creating output directory {}", out.display()))?;
    fs::write(out.join("config.txt"), cfg.serialize()).context("writing config echo")?;
    let report = match kind {
        ExperimentKind::KernelBounds => kernel_bounds::run(cfg, out)?,
        ExperimentKind::Converge => converge::run(cfg, out)?,
        ExperimentKind::MaximalIneq => maximal_ineq::run(cfg, out)?,
        ExperimentKind::TnSeries => tn_series::run(cfg, out)?,
        ExperimentKind::AbelIdentity => abel_identity::run(cfg, out)?,
        ExperimentKind::DumpKernel => dump_kernel::run(cfg, out)?,
    };
    report.write(out)?;
    Ok(report)
}

/// `count` angles evenly spaced over [0, pi] inclusive.
pub(crate) fn uniform_angles(count: usize) -> Result<Vec<f64>> {
    fourier_laplace::maximal::MaximalConfig::uniform_angles(count).map_err(Into::into)
}

/// `count` angles strictly inside (0, pi).
pub(crate) fn interior_angles(count: usize) -> Vec<f64> {
    (1..=count)
        .map(|i| std::f64::consts::PI * i as f64 / (count + 1) as f64)
        .collect()
}

/// L1 norm over the sphere of an arbitrary zonal profile, integrated per
/// panel so kinks between panels cost nothing.
pub(crate) fn l1_of_profile(
    ctx: &SphereContext,
    panels: usize,
    rule: &QuadratureRule,
    profile: impl Fn(f64) -> f64,
) -> Result<f64> {
    let mut total = 0.0;
    for i in 0..panels {
        let lo = std::f64::consts::PI * i as f64 / panels as f64;
        let hi = std::f64::consts::PI * (i + 1) as f64 / panels as f64;
        total += sin_power_integral(ctx.dim_n(), lo, hi, rule, |g| profile(g).abs())?;
    }
    Ok(ctx.equator_area() * total)
}

/// Construct the configured test function at the given expansion degree.
pub(crate) fn build_test_function(
    ctx: &SphereContext,
    cfg: &ExperimentConfig,
    degree: usize,
    rule: &QuadratureRule,
) -> Result<ZonalFunction> {
    let f = match cfg.test_function {
        TestFunctionKind::Bandlimited => {
            bandlimited_random(ctx, cfg.band_limit.min(degree), cfg.seed)?
        }
        TestFunctionKind::Heat => heat_function(ctx, cfg.heat_t, degree)?,
        TestFunctionKind::Cap => cap_function(ctx, cfg.cap_radius, degree, rule)?,
        TestFunctionKind::Regularity => regularity_function(ctx, cfg.smoothness, degree)?,
    };
    Ok(f)
}
