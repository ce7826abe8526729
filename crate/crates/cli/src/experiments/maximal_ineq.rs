//! Maximal-operator experiment: the L1 cost of the summation maximal
//! function against the smoothness norm of the data, its stability across
//! bandwidths, pointwise domination by antipodal cap averages of the
//! lifted data, and grid-refinement checks on both maximal operators.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use fourier_laplace::kernels::{csv_number, KernelMethod};
use fourier_laplace::maximal::{hl_maximal, maximal_riesz, MaximalConfig};
use fourier_laplace::spectral::{
    apply_summation, bandlimited_random, fractional_power, liouville_norm, ZonalFunction,
};
use fourier_laplace::{QuadratureRule, SphereContext};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::report::ExperimentReport;

use super::l1_of_profile;

/// L1 norm of the maximal function of `f` over the degree grid, divided by
/// the configured smoothness norm of `f`.
fn maximal_ratio(
    ctx: &SphereContext,
    cfg: &ExperimentConfig,
    f: &ZonalFunction,
    degrees: &[usize],
    rule: &QuadratureRule,
) -> Result<f64> {
    let means = degrees
        .iter()
        .map(|&n| apply_summation(ctx, f, KernelMethod::Riesz { alpha: cfg.alpha }, n))
        .collect::<Result<Vec<_>, _>>()?;
    let profile = |g: f64| {
        means
            .iter()
            .map(|m| m.evaluate(ctx, g).expect("degree within context").abs())
            .fold(0.0, f64::max)
    };
    let panels = (4 * f.degree()).max(32);
    let numerator = l1_of_profile(ctx, panels, rule, profile)?;
    let power = cfg.liouville_exponent.power(cfg.tau);
    let denominator = liouville_norm(ctx, f, power, cfg.spectrum.to_core(), 1.0, rule)?;
    if !(denominator.is_finite() && denominator > 0.0) {
        bail!("smoothness norm degenerated to {denominator}; ratios are meaningless");
    }
    Ok(numerator / denominator)
}

/// Worst ratio over the seed ensemble.
fn worst_ratio(
    ctx: &SphereContext,
    cfg: &ExperimentConfig,
    bandwidth: usize,
    degrees: &[usize],
    rule: &QuadratureRule,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for s in 0..cfg.ensemble {
        let f = bandlimited_random(ctx, bandwidth, cfg.seed + s as u64)?;
        worst = worst.max(maximal_ratio(ctx, cfg, &f, degrees, rule)?);
    }
    Ok(worst)
}

fn count_regressions(fine: &[f64], coarse: &[f64]) -> usize {
    fine.iter().zip(coarse).filter(|(f, c)| f < c).count()
}

pub fn run(cfg: &ExperimentConfig, out: &Path) -> Result<ExperimentReport> {
    let kind = ExperimentKind::MaximalIneq;
    let tag = cfg.parameter_tag(kind);
    let mut report = ExperimentReport::default();

    if cfg.ensemble == 0 {
        bail!("ensemble must be at least 1");
    }
    let k_max = *cfg.bandwidths.iter().max().context("empty bandwidth list")?;
    let ctx = SphereContext::new(cfg.dim_n, k_max.max(cfg.n_max))?;
    let rule = QuadratureRule::gauss_legendre(cfg.quad_nodes.resolve(k_max.max(cfg.n_max)))?;
    let polar = QuadratureRule::gauss_legendre(cfg.polar_nodes)?;
    let azimuth = QuadratureRule::gauss_legendre(cfg.azimuth_nodes)?;
    // One fixed operator grid for every bandwidth: the data varies, the
    // maximal operator does not.
    let grid = MaximalConfig::new(
        MaximalConfig::dyadic_degrees(cfg.n_max),
        MaximalConfig::geometric_radii(cfg.radii_count, cfg.radius_min)?,
        MaximalConfig::uniform_angles(cfg.eval_count)?,
    )?;

    // Ratio sweep across bandwidths: a maximal inequality shows up as the
    // worst ratio staying of one size while the bandwidth doubles.
    let mut ratios_csv = String::from("bandwidth,grid,worst_ratio\n");
    let mut sweep = Vec::new();
    for &bw in &cfg.bandwidths {
        let worst = worst_ratio(&ctx, cfg, bw, &grid.degrees, &rule)?;
        report.push_metric(kind.name(), &tag, &format!("worst_ratio_K={bw}"), worst);
        ratios_csv.push_str(&format!("{},coarse,{}\n", bw, csv_number(worst)));
        sweep.push(worst);
    }
    let r_first = sweep[0];
    let r_last = *sweep.last().expect("non-empty sweep");
    let growth = r_last / r_first;
    report.push_metric(kind.name(), &tag, "ratio_growth", growth);

    // Pointwise domination at the largest bandwidth: the summation maximal
    // function of f against cap averages of the lifted data taken at the
    // point and at its antipode.
    let f = bandlimited_random(&ctx, k_max, cfg.seed)?;
    let lifted = fractional_power(&ctx, &f, 0.5 * cfg.tau, cfg.spectrum.to_core())?;
    let estar = maximal_riesz(&ctx, &f, cfg.alpha, &grid)?;
    let gstar = hl_maximal(&ctx, &grid, &polar, &azimuth, |g| {
        lifted.evaluate(&ctx, g).expect("degree within context")
    })?;
    let m = grid.eval_angles.len();
    let mut domination = 0.0f64;
    for i in 0..m {
        let den = gstar.values[i] + gstar.values[m - 1 - i];
        if !(den.is_finite() && den > 0.0) {
            bail!("cap-average floor vanished at angle index {i}");
        }
        domination = domination.max(estar.values[i] / den);
    }
    report.push_metric(kind.name(), &tag, "domination_constant", domination);

    let mut riesz_csv = Vec::new();
    estar.write_csv(&mut riesz_csv)?;
    fs::write(out.join("riesz_maximal.csv"), riesz_csv)?;
    let mut hl_csv = Vec::new();
    gstar.write_csv(&mut hl_csv)?;
    fs::write(out.join("hl_maximal.csv"), hl_csv)?;

    let pass_9 = growth < cfg.ratio_factor && domination.is_finite();
    report.push_criterion("criterion_9", pass_9, growth, cfg.ratio_factor);

    // Refinement stability: doubling both grids may only nudge the worst
    // ratios, and can never lower a maximal value at any angle.
    let fine = grid.refine_degrees().refine_radii();
    let mut fine_sweep = Vec::new();
    let mut drift = 0.0f64;
    for (i, &bw) in cfg.bandwidths.iter().enumerate() {
        let worst = worst_ratio(&ctx, cfg, bw, &fine.degrees, &rule)?;
        report.push_metric(kind.name(), &tag, &format!("fine_ratio_K={bw}"), worst);
        ratios_csv.push_str(&format!("{},fine,{}\n", bw, csv_number(worst)));
        drift = drift.max((worst / sweep[i] - 1.0).abs());
        fine_sweep.push(worst);
    }
    fs::write(out.join("ratios.csv"), ratios_csv)?;
    let fine_growth = fine_sweep.last().expect("non-empty") / fine_sweep[0];
    report.push_metric(kind.name(), &tag, "refinement_drift", drift);
    report.push_metric(
        kind.name(),
        &tag,
        "growth_drift",
        (fine_growth / growth - 1.0).abs(),
    );

    let mut regressions = 0usize;
    for s in 0..cfg.ensemble.min(8) {
        let f = bandlimited_random(&ctx, k_max, cfg.seed + s as u64)?;
        let coarse_p = maximal_riesz(&ctx, &f, cfg.alpha, &grid)?;
        let fine_p = maximal_riesz(&ctx, &f, cfg.alpha, &fine)?;
        regressions += count_regressions(&fine_p.values, &coarse_p.values);
    }
    for s in 0..cfg.ensemble.min(2) {
        let f = bandlimited_random(&ctx, k_max, cfg.seed + s as u64)?;
        let lifted = fractional_power(&ctx, &f, 0.5 * cfg.tau, cfg.spectrum.to_core())?;
        let profile = |g: f64| lifted.evaluate(&ctx, g).expect("degree within context");
        let coarse_p = hl_maximal(&ctx, &grid, &polar, &azimuth, profile)?;
        let fine_p = hl_maximal(&ctx, &fine, &polar, &azimuth, profile)?;
        regressions += count_regressions(&fine_p.values, &coarse_p.values);
    }
    report.push_metric(kind.name(), &tag, "refinement_regressions", regressions as f64);

    let pass_10 = drift < cfg.tol_refinement && regressions == 0;
    report.push_criterion("criterion_10", pass_10, drift, cfg.tol_refinement);
    Ok(report)
}
