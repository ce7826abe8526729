//! Kernel size against its envelope across the three validity regimes,
//! with normalization and quadrature self-checks on the same sweep.

use std::fs;
use std::path::Path;

use anyhow::{bail, Result};
use fourier_laplace::kernels::{
    kernel_bound_envelope, summation_weights, BoundRegime, KernelGrid, KernelMethod, KernelSpec,
};
use fourier_laplace::quadrature::zonal_integral;
use fourier_laplace::spectral::ZonalFunction;
use fourier_laplace::{QuadratureRule, SphereContext};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::report::ExperimentReport;

use super::interior_angles;

/// Largest |kernel| / envelope over the grid points where the regime is
/// defined; None when no grid point falls in the regime's domain.
fn sup_ratio(
    ctx: &SphereContext,
    alpha: f64,
    n: usize,
    grid: &KernelGrid,
    regime: BoundRegime,
) -> Option<f64> {
    let mut best: Option<f64> = None;
    for (gamma, value) in grid.angles.iter().zip(&grid.values) {
        match kernel_bound_envelope(ctx, alpha, n, *gamma, regime) {
            Ok(env) => {
                let r = value.abs() / env;
                best = Some(best.map_or(r, |b: f64| b.max(r)));
            }
            Err(_) => continue,
        }
    }
    best
}

pub fn run(cfg: &ExperimentConfig, out: &Path) -> Result<ExperimentReport> {
    let kind = ExperimentKind::KernelBounds;
    let tag = cfg.parameter_tag(kind);
    let mut report = ExperimentReport::default();

    let degrees = cfg.degree_grid.resolve(cfg.n_max);
    if degrees.is_empty() {
        bail!("empty degree grid");
    }
    let top = *degrees.iter().max().unwrap();
    let ctx = SphereContext::new(cfg.dim_n, top)?;
    let angles = interior_angles(cfg.angle_count);
    let regimes = [
        ("interior", BoundRegime::Interior),
        ("uniform", BoundRegime::Uniform),
        (
            "away_from_pole",
            BoundRegime::AwayFromPole {
                gamma_min: cfg.gamma_min,
            },
        ),
    ];

    let mut ratios: Vec<Vec<f64>> = vec![Vec::new(); regimes.len()];
    for &n in &degrees {
        let spec = KernelSpec::new(&ctx, KernelMethod::Riesz { alpha: cfg.alpha }, n)?;
        let grid = KernelGrid::compute(&ctx, spec, &angles)?;
        for (slot, (label, regime)) in regimes.iter().enumerate() {
            let Some(r) = sup_ratio(&ctx, cfg.alpha, n, &grid, *regime) else {
                bail!("no grid angle falls inside regime {label}");
            };
            report.push_metric(kind.name(), &tag, &format!("sup_ratio_{label}_n={n}"), r);
            ratios[slot].push(r);
        }
    }

    // Dump the top-degree grid with its envelope attached.
    let spec = KernelSpec::new(&ctx, KernelMethod::Riesz { alpha: cfg.alpha }, top)?;
    let mut grid = KernelGrid::compute(&ctx, spec, &angles)?;
    grid.attach_envelope(&ctx)?;
    let mut buf = Vec::new();
    grid.write_csv(&mut buf)?;
    fs::write(out.join("kernel_bounds.csv"), &buf)?;

    // Interior regime: the sup ratio must be stable (variation bounded)
    // across the degree sweep. The coarser regimes must not grow.
    let variation = |v: &[f64]| {
        let hi = v.iter().cloned().fold(f64::MIN, f64::max);
        let lo = v.iter().cloned().fold(f64::MAX, f64::min);
        hi / lo
    };
    let growth = |v: &[f64]| v.last().unwrap() / v.first().unwrap();
    let interior_variation = variation(&ratios[0]);
    let uniform_growth = growth(&ratios[1]);
    let away_growth = growth(&ratios[2]);
    report.push_metric(kind.name(), &tag, "interior_variation", interior_variation);
    report.push_metric(kind.name(), &tag, "uniform_growth", uniform_growth);
    report.push_metric(kind.name(), &tag, "away_from_pole_growth", away_growth);
    let finite = ratios
        .iter()
        .flat_map(|v| v.iter())
        .all(|r| r.is_finite());
    let pass5 = finite
        && interior_variation < cfg.tol_envelope_variation
        && uniform_growth < cfg.tol_envelope_variation
        && away_growth < cfg.tol_envelope_variation;
    report.push_criterion(
        "criterion_5",
        pass5,
        interior_variation,
        cfg.tol_envelope_variation,
    );

    // Normalization sweep: the mean-preserving kernels must integrate to 1
    // for every degree up to 64 and the standard order ladder.
    let half = (cfg.dim_n as f64 - 1.0) / 2.0;
    let orders = [0.0, 0.5, half, cfg.dim_n as f64];
    let mut mass_dev = 0.0f64;
    let mut doubling_dev = 0.0f64;
    for n in 1..=64usize {
        let rule = QuadratureRule::gauss_legendre(cfg.quad_nodes.resolve(n))?;
        let doubled = QuadratureRule::gauss_legendre(2 * cfg.quad_nodes.resolve(n) + 1)?;
        for &alpha in &orders {
            for method in [
                KernelMethod::Riesz { alpha },
                KernelMethod::Cesaro { alpha },
            ] {
                let kernel = ZonalFunction::new(summation_weights(&ctx, method, n)?)?;
                let mass = zonal_integral(&ctx, &rule, |g| {
                    kernel.evaluate(&ctx, g).expect("degree within context")
                })?;
                mass_dev = mass_dev.max((mass - 1.0).abs());
                if n == 64 {
                    let again = zonal_integral(&ctx, &doubled, |g| {
                        kernel.evaluate(&ctx, g).expect("degree within context")
                    })?;
                    doubling_dev = doubling_dev.max((mass - again).abs());
                }
            }
        }
    }
    report.push_metric(kind.name(), &tag, "max_mass_deviation", mass_dev);
    report.push_criterion(
        "criterion_2",
        mass_dev <= cfg.tol_normalization,
        mass_dev,
        cfg.tol_normalization,
    );

    // Quadrature self-validation: node doubling must not move the masses,
    // and the rule must be exact at its stated polynomial capacity.
    let mut capacity_dev = 0.0f64;
    for m in [8usize, 33, 101] {
        let rule = QuadratureRule::gauss_legendre(m)?;
        let d = rule.capacity() as i32;
        let even = rule.integrate(|t| t.powi(d - 1));
        let exact = 2.0 / d as f64;
        capacity_dev = capacity_dev.max((even - exact).abs() / exact);
        capacity_dev = capacity_dev.max(rule.integrate(|t| t.powi(d)).abs());
    }
    let quad_dev = doubling_dev.max(capacity_dev);
    report.push_metric(kind.name(), &tag, "node_doubling_deviation", doubling_dev);
    report.push_metric(kind.name(), &tag, "capacity_deviation", capacity_dev);
    report.push_criterion(
        "criterion_11",
        quad_dev <= cfg.tol_quadrature,
        quad_dev,
        cfg.tol_quadrature,
    );
    Ok(report)
}
