//! Tabulate one kernel over an angle grid, optionally with its size
//! envelope, and pin down the degenerate-order identities between the
//! kernel families.

use std::fs;
use std::path::Path;

use anyhow::Result;
use fourier_laplace::kernels::{KernelGrid, KernelMethod, KernelSpec};
use fourier_laplace::SphereContext;

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::report::ExperimentReport;

use super::uniform_angles;

fn grid_csv(ctx: &SphereContext, method: KernelMethod, n: usize, angles: &[f64]) -> Result<Vec<u8>> {
    let spec = KernelSpec::new(ctx, method, n)?;
    let grid = KernelGrid::compute(ctx, spec, angles)?;
    let mut buf = Vec::new();
    grid.write_csv(&mut buf)?;
    Ok(buf)
}

pub fn run(cfg: &ExperimentConfig, out: &Path) -> Result<ExperimentReport> {
    let kind = ExperimentKind::DumpKernel;
    let tag = cfg.parameter_tag(kind);
    let mut report = ExperimentReport::default();

    let ctx = SphereContext::new(cfg.dim_n, cfg.n_max.max(1))?;
    let angles = uniform_angles(cfg.angle_count)?;

    let spec = KernelSpec::new(&ctx, cfg.method.with_orders(cfg.alpha, cfg.tau), cfg.n_max)?;
    let mut grid = KernelGrid::compute(&ctx, spec, &angles)?;
    if cfg.envelope {
        grid.attach_envelope(&ctx)?;
    }
    let mut buf = Vec::new();
    grid.write_csv(&mut buf)?;
    fs::write(out.join("kernel.csv"), &buf)?;

    let sup = grid.values.iter().cloned().fold(0.0f64, |a, v| a.max(v.abs()));
    report.push_metric(kind.name(), &tag, "sup_abs_value", sup);
    report.push_metric(kind.name(), &tag, "value_at_zero", grid.values[0]);

    // Degenerate orders: at alpha = 0 both weighted families collapse onto
    // the raw truncation, byte for byte in the dumped tables.
    let n = cfg.n_max.max(1);
    let partial = grid_csv(&ctx, KernelMethod::Partial, n, &angles)?;
    let riesz0 = grid_csv(&ctx, KernelMethod::Riesz { alpha: 0.0 }, n, &angles)?;
    let cesaro0 = grid_csv(&ctx, KernelMethod::Cesaro { alpha: 0.0 }, n, &angles)?;
    let mut mismatches = 0.0;
    if riesz0 != partial {
        mismatches += 1.0;
    }
    if cesaro0 != partial {
        mismatches += 1.0;
    }

    // Degree zero is allowed for the raw truncation and is the constant
    // kernel 1/omega_N exactly.
    let flat = KernelGrid::compute(
        &ctx,
        KernelSpec::new(&ctx, KernelMethod::Partial, 0)?,
        &angles,
    )?;
    let constant = 1.0 / ctx.surface_area();
    if !flat.values.iter().all(|&v| v == constant) {
        mismatches += 1.0;
    }

    report.push_metric(kind.name(), &tag, "degenerate_order_mismatches", mismatches);
    report.push_criterion("criterion_4", mismatches == 0.0, mismatches, 0.0);
    Ok(report)
}
