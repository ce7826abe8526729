//! Zonal spectral engine: projection, synthesis, summation multipliers,
//! fractional spectral powers, and Lebesgue / smoothness norms.
//!
//! A zonal function is stored by its frame coefficients c_k in
//!
//! ```text
//! f(gamma) = sum_k c_k Z_k(cos gamma),
//! ```
//!
//! the convention in which the degree-k projection of f is c_k Z_k. The
//! projection integral and the coefficient are related through the
//! reproducing identity integral(Z_k^2) = d_k / omega_N:
//!
//! ```text
//! project(f, k) = integral(f Z_k) = c_k d_k / omega_N,
//! c_k = project(f, k) * omega_N / d_k.
//! ```

use crate::context::SphereContext;
use crate::error::{Error, Result};
use crate::kernels::{summation_weights, weighted_zonal_sum, KernelMethod};
use crate::quadrature::{sin_power_integral, sin_power_nodes, zonal_integral, QuadratureRule};
use crate::rng::SplitMix64;

/// Which spectral values a multiplier is built from: the raw eigenvalues
/// lambda_k = k (k + N - 1), or the shifted spectrum mu_k = lambda_k + 1.
/// The shift keeps negative powers finite at k = 0 and is the default in
/// the experiment layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spectrum {
    Lambda,
    Mu,
}

impl Spectrum {
    fn value(self, ctx: &SphereContext, k: usize) -> f64 {
        match self {
            Spectrum::Lambda => ctx.eigenvalue(k),
            Spectrum::Mu => ctx.shifted_eigenvalue(k),
        }
    }
}

/// Number of samples used for the grid supremum in [`lebesgue_norm`].
pub const DEFAULT_SUP_SAMPLES: usize = 4096;

/// A function on the sphere depending only on the angle to a fixed pole,
/// held as frame coefficients against the zonal harmonics.
#[derive(Debug, Clone, PartialEq)]
pub struct ZonalFunction {
    coeffs: Vec<f64>,
}

impl ZonalFunction {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ZeroTruncation);
        }
        Ok(Self { coeffs })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Pointwise value at polar angle gamma.
    pub fn evaluate(&self, ctx: &SphereContext, gamma: f64) -> Result<f64> {
        ctx.check_degree(self.degree())?;
        weighted_zonal_sum(ctx, &self.coeffs, gamma.cos())
    }

    /// Values over a grid of angles; the coefficient pass is reused per
    /// angle, so this is O(len * degree).
    pub fn evaluate_many(&self, ctx: &SphereContext, angles: &[f64]) -> Result<Vec<f64>> {
        angles.iter().map(|&g| self.evaluate(ctx, g)).collect()
    }

    /// L2 norm from the coefficients alone (Parseval):
    /// sqrt(sum c_k^2 d_k / omega_N).
    pub fn norm_l2(&self, ctx: &SphereContext) -> Result<f64> {
        ctx.check_degree(self.degree())?;
        let mut sum = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            sum += c * c * ctx.zonal_scale(k);
        }
        Ok(sum.sqrt())
    }
}

/// Projection integral of a zonal profile against Z_k.
///
/// When the profile is a polynomial of known degree in cos gamma, pass that
/// degree so the rule's polynomial capacity can be checked; profiles of
/// unknown smoothness pass `None` and take responsibility for resolution.
pub fn project<F: Fn(f64) -> f64>(
    ctx: &SphereContext,
    rule: &QuadratureRule,
    k: usize,
    profile_degree: Option<usize>,
    profile: F,
) -> Result<f64> {
    ctx.check_degree(k)?;
    check_projection_capacity(ctx, rule, k, profile_degree)?;
    zonal_integral(ctx, rule, |gamma| {
        let ratio = ctx
            .unit_zonal(gamma.cos())
            .expect("cosine is always in range")
            .nth(k)
            .expect("unit zonal iterator is infinite");
        profile(gamma) * ctx.zonal_scale(k) * ratio
    })
}

/// Rule capacity needed to project a profile of polynomial degree d (in
/// cos gamma) against Z_k: product degree plus the polynomial part of the
/// area factor on the even-dimension path; the odd path is not polynomial,
/// so its requirement is a doubled-degree heuristic.
fn check_projection_capacity(
    ctx: &SphereContext,
    rule: &QuadratureRule,
    k: usize,
    profile_degree: Option<usize>,
) -> Result<()> {
    if let Some(d) = profile_degree {
        let dim = ctx.dim_n() as usize;
        let needed = if dim % 2 == 0 {
            d + k + dim - 2
        } else {
            2 * (d + k) + dim - 1
        };
        if rule.capacity() < needed {
            return Err(Error::Underresolved {
                nodes: rule.len(),
                capacity: rule.capacity(),
                needed,
            });
        }
    }
    Ok(())
}

/// Frame coefficients recovered from quadrature nodes shared across all
/// degrees: c_k = omega_N * sum_i w_i f(gamma_i) R_k(cos gamma_i), one
/// recurrence sweep per node. (The zonal scale d_k / omega_N of Z_k and the
/// inversion factor omega_N / d_k cancel, leaving the equator area from the
/// measure reduction.)
fn coefficients_from_nodes(
    ctx: &SphereContext,
    nodes: &[(f64, f64)],
    max_k: usize,
    profile: impl Fn(f64) -> f64,
) -> Result<ZonalFunction> {
    ctx.check_degree(max_k)?;
    let mut sums = vec![0.0f64; max_k + 1];
    for &(gamma, w) in nodes {
        let fw = w * profile(gamma);
        let ratios = ctx.unit_zonal(gamma.cos())?;
        for (k, r) in ratios.take(max_k + 1).enumerate() {
            sums[k] += fw * r;
        }
    }
    let area = ctx.equator_area();
    ZonalFunction::new(sums.into_iter().map(|s| area * s).collect())
}

/// Recover frame coefficients c_0..c_max_k of a zonal profile. All degrees
/// share one node set, so the cost is O(nodes * max_k) rather than the
/// O(nodes * max_k^2) of repeated [`project`] calls.
pub fn analyze<F: Fn(f64) -> f64>(
    ctx: &SphereContext,
    rule: &QuadratureRule,
    max_k: usize,
    profile_degree: Option<usize>,
    profile: F,
) -> Result<ZonalFunction> {
    ctx.check_degree(max_k)?;
    check_projection_capacity(ctx, rule, max_k, profile_degree)?;
    let nodes = sin_power_nodes(ctx.dim_n(), 0.0, std::f64::consts::PI, rule)?;
    coefficients_from_nodes(ctx, &nodes, max_k, profile)
}

/// Apply a summation method at truncation degree n to the expansion:
/// coefficients become w_k c_k for k <= n and are dropped past n.
pub fn apply_summation(
    ctx: &SphereContext,
    f: &ZonalFunction,
    method: KernelMethod,
    n: usize,
) -> Result<ZonalFunction> {
    let weights = summation_weights(ctx, method, n)?;
    let coeffs = weights
        .iter()
        .enumerate()
        .map(|(k, &w)| w * f.coeffs.get(k).copied().unwrap_or(0.0))
        .collect();
    ZonalFunction::new(coeffs)
}

/// Fractional spectral power: coefficients become s_k^power c_k with s_k
/// drawn from the chosen spectrum. A negative power over the raw spectrum
/// is rejected when it would hit lambda_0 = 0 against a nonzero c_0.
pub fn fractional_power(
    ctx: &SphereContext,
    f: &ZonalFunction,
    power: f64,
    spectrum: Spectrum,
) -> Result<ZonalFunction> {
    ctx.check_degree(f.degree())?;
    let mut coeffs = Vec::with_capacity(f.coeffs.len());
    for (k, &c) in f.coeffs.iter().enumerate() {
        if c == 0.0 {
            coeffs.push(0.0);
            continue;
        }
        let scaled = spectrum.value(ctx, k).powf(power) * c;
        if !scaled.is_finite() {
            return Err(Error::OutOfRange {
                name: "spectral power",
                value: power,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        coeffs.push(scaled);
    }
    ZonalFunction::new(coeffs)
}

/// Grid supremum of |f| over `samples` equally spaced angles in [0, pi].
pub fn sup_norm(ctx: &SphereContext, f: &ZonalFunction, samples: usize) -> Result<f64> {
    if samples < 2 {
        return Err(Error::BadGrid {
            kind: "sup",
            reason: "needs at least two samples",
        });
    }
    let mut best = 0.0f64;
    for i in 0..samples {
        let gamma = std::f64::consts::PI * i as f64 / (samples - 1) as f64;
        best = best.max(f.evaluate(ctx, gamma)?.abs());
    }
    Ok(best)
}

/// Lebesgue norm of a zonal function for p in {1, 2, infinity}.
///
/// p = 2 is evaluated spectrally (exact up to rounding); p = 1 integrates
/// |f| with the rule applied per panel on a partition fine enough for the
/// oscillation at this degree; p = infinity is the grid supremum over
/// [`DEFAULT_SUP_SAMPLES`] angles.
pub fn lebesgue_norm(
    ctx: &SphereContext,
    f: &ZonalFunction,
    p: f64,
    rule: &QuadratureRule,
) -> Result<f64> {
    if p == 2.0 {
        f.norm_l2(ctx)
    } else if p == 1.0 {
        ctx.check_degree(f.degree())?;
        let panels = (4 * f.degree()).max(32);
        let mut total = 0.0;
        for i in 0..panels {
            let lo = std::f64::consts::PI * i as f64 / panels as f64;
            let hi = std::f64::consts::PI * (i + 1) as f64 / panels as f64;
            total += ctx.equator_area()
                * sin_power_integral(ctx.dim_n(), lo, hi, rule, |g| {
                    f.evaluate(ctx, g).expect("degree already checked").abs()
                })?;
        }
        Ok(total)
    } else if p.is_infinite() && p > 0.0 {
        sup_norm(ctx, f, DEFAULT_SUP_SAMPLES)
    } else {
        Err(Error::UnsupportedExponent { p })
    }
}

/// Smoothness norm: the Lebesgue norm after the spectral multiplier
/// s_k^power. The caller chooses the power convention (full or half order)
/// and the spectrum.
pub fn liouville_norm(
    ctx: &SphereContext,
    f: &ZonalFunction,
    power: f64,
    spectrum: Spectrum,
    p: f64,
    rule: &QuadratureRule,
) -> Result<f64> {
    let lifted = fractional_power(ctx, f, power, spectrum)?;
    lebesgue_norm(ctx, &lifted, p, rule)
}

/// Band-limited test function with coefficients drawn uniformly from
/// [-1, 1]; a fixed seed gives a reproducible function.
pub fn bandlimited_random(ctx: &SphereContext, degree: usize, seed: u64) -> Result<ZonalFunction> {
    ctx.check_degree(degree)?;
    let mut rng = SplitMix64::new(seed);
    ZonalFunction::new((0..=degree).map(|_| rng.next_symmetric()).collect())
}

/// Heat-flow test function: c_k = exp(-t lambda_k), truncated at `degree`.
pub fn heat_function(ctx: &SphereContext, t: f64, degree: usize) -> Result<ZonalFunction> {
    ctx.check_degree(degree)?;
    if !(t > 0.0) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            lo: f64::MIN_POSITIVE,
            hi: f64::INFINITY,
        });
    }
    ZonalFunction::new((0..=degree).map(|k| (-t * ctx.eigenvalue(k)).exp()).collect())
}

/// Test function of prescribed smoothness: c_k = mu_k^-beta over the
/// shifted spectrum.
pub fn regularity_function(ctx: &SphereContext, beta: f64, degree: usize) -> Result<ZonalFunction> {
    ctx.check_degree(degree)?;
    ZonalFunction::new(
        (0..=degree)
            .map(|k| ctx.shifted_eigenvalue(k).powf(-beta))
            .collect(),
    )
}

/// Expansion of the indicator of the polar cap {gamma < r}, truncated at
/// `degree`; its partial sums exhibit the classical overshoot at the rim.
pub fn cap_function(
    ctx: &SphereContext,
    r: f64,
    degree: usize,
    rule: &QuadratureRule,
) -> Result<ZonalFunction> {
    ctx.check_degree(degree)?;
    if !(r > 0.0 && r <= std::f64::consts::PI) {
        return Err(Error::OutOfRange {
            name: "r",
            value: r,
            lo: 0.0,
            hi: std::f64::consts::PI,
        });
    }
    // The integrand is exactly 1 on [0, r], so the projection integrals are
    // polynomial over the integration range and the shared-node batch is
    // exact at rule capacity.
    check_projection_capacity(ctx, rule, degree, Some(0))?;
    let nodes = sin_power_nodes(ctx.dim_n(), 0.0, r, rule)?;
    coefficients_from_nodes(ctx, &nodes, degree, |_| 1.0)
}
