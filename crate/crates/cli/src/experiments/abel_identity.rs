//! Exactness of the summation-by-parts rearrangement of the damped kernel,
//! in both its pointwise-kernel and operator (coefficient) forms.

use std::fs;
use std::path::Path;

use anyhow::Result;
use fourier_laplace::kernels::{
    abel_riesz_kernel, abel_riesz_kernel_telescoped, csv_number, KernelMethod,
};
use fourier_laplace::spectral::{apply_summation, bandlimited_random, fractional_power};
use fourier_laplace::SphereContext;

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::report::ExperimentReport;

use super::uniform_angles;

const ALPHAS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];
const TAUS: [f64; 3] = [0.25, 0.75, 1.5];

pub fn run(cfg: &ExperimentConfig, out: &Path) -> Result<ExperimentReport> {
    let kind = ExperimentKind::AbelIdentity;
    let tag = cfg.parameter_tag(kind);
    let mut report = ExperimentReport::default();

    let ctx = SphereContext::new(cfg.dim_n, cfg.n_max)?;
    let angles = uniform_angles(cfg.angle_count)?;
    let spectrum = cfg.spectrum.to_core();

    let mut csv = String::from("alpha,tau,n,kernel_deviation,coefficient_deviation\n");
    let mut worst = 0.0f64;

    for &alpha in &ALPHAS {
        for &tau in &TAUS {
            // Kernel form: direct damped sum against its telescoped
            // rearrangement, normalized by the kernel scale.
            let mut kernel_dev_by_n = vec![0.0f64; cfg.n_max + 1];
            for &gamma in &angles {
                let t = gamma.cos();
                for n in 1..=cfg.n_max {
                    let direct = abel_riesz_kernel(&ctx, alpha, tau, n, t)?;
                    let parts = abel_riesz_kernel_telescoped(&ctx, alpha, tau, n, t)?;
                    let dev = (direct - parts).abs() / direct.abs().max(1.0);
                    if dev > kernel_dev_by_n[n] {
                        kernel_dev_by_n[n] = dev;
                    }
                }
            }

            // Operator form: lifting by the half-order power, applying the
            // mean, and lifting back must reproduce the plain mean on every
            // coefficient.
            let f = bandlimited_random(&ctx, cfg.n_max, cfg.seed)?;
            let lifted = fractional_power(&ctx, &f, 0.5 * tau, spectrum)?;
            let mut coeff_dev_by_n = vec![0.0f64; cfg.n_max + 1];
            for n in 1..=cfg.n_max {
                let method = KernelMethod::Riesz { alpha };
                let conjugated = fractional_power(
                    &ctx,
                    &apply_summation(&ctx, &lifted, method, n)?,
                    -0.5 * tau,
                    spectrum,
                )?;
                let plain = apply_summation(&ctx, &f, method, n)?;
                let mut dev = 0.0f64;
                for (a, b) in conjugated
                    .coefficients()
                    .iter()
                    .zip(plain.coefficients())
                {
                    dev = dev.max((a - b).abs() / b.abs().max(1.0));
                }
                coeff_dev_by_n[n] = dev;
            }

            let mut n = 1usize;
            while n <= cfg.n_max {
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    csv_number(alpha),
                    csv_number(tau),
                    n,
                    csv_number(kernel_dev_by_n[n]),
                    csv_number(coeff_dev_by_n[n])
                ));
                n *= 2;
            }
            let kmax = kernel_dev_by_n.iter().cloned().fold(0.0, f64::max);
            let cmax = coeff_dev_by_n.iter().cloned().fold(0.0, f64::max);
            report.push_metric(
                kind.name(),
                &tag,
                &format!("kernel_deviation_alpha={alpha}_tau={tau}"),
                kmax,
            );
            report.push_metric(
                kind.name(),
                &tag,
                &format!("coefficient_deviation_alpha={alpha}_tau={tau}"),
                cmax,
            );
            worst = worst.max(kmax).max(cmax);
        }
    }

    fs::write(out.join("identity.csv"), csv)?;
    report.push_metric(kind.name(), &tag, "max_deviation", worst);
    report.push_criterion("criterion_1", worst <= cfg.tol_identity, worst, cfg.tol_identity);
    Ok(report)
}
