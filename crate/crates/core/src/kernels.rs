//! Summation kernels for Fourier-Laplace expansions and their size
//! envelopes.
//!
//! The degree-k zonal harmonic Z_k is the reproducing kernel of the space of
//! degree-k spherical harmonics, normalized so that integrating Z_k against
//! a function extracts its degree-k component. A summation method with
//! truncation degree n turns the divergent series sum_k Z_k into the kernel
//! sum_k w_k Z_k with weights
//!
//! ```text
//! partial:     w_k = 1                                   k <= n
//! Riesz:       w_k = (1 - lambda_k / lambda_n)^alpha     (0^0 = 1)
//! Cesaro:      w_k = A_{n-k}^alpha / A_n^alpha
//! Abel-Riesz:  w_k = lambda_k^-tau (1 - lambda_k / lambda_n)^alpha,  k >= 1
//! ```
//!
//! Convolving a function against the kernel applies the corresponding means
//! to its expansion.

use std::io::{self, Write};

use crate::context::SphereContext;
use crate::error::{Error, Result};

/// Summation method attached to a kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelMethod {
    /// Raw partial sums of the expansion.
    Partial,
    /// Riesz means of order `alpha` built on the eigenvalue ratio.
    Riesz { alpha: f64 },
    /// Cesaro means of order `alpha` on the degree index.
    Cesaro { alpha: f64 },
    /// Riesz means with the extra spectral damping lambda^-tau; the weight
    /// starts at degree 1 because lambda_0 = 0.
    AbelRiesz { alpha: f64, tau: f64 },
}

impl KernelMethod {
    /// Smoothing order used when pairing the kernel with a size envelope.
    pub fn envelope_order(&self) -> f64 {
        match *self {
            KernelMethod::Partial => 0.0,
            KernelMethod::Riesz { alpha }
            | KernelMethod::Cesaro { alpha }
            | KernelMethod::AbelRiesz { alpha, .. } => alpha,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            KernelMethod::Partial => "partial",
            KernelMethod::Riesz { .. } => "riesz",
            KernelMethod::Cesaro { .. } => "cesaro",
            KernelMethod::AbelRiesz { .. } => "abel-riesz",
        }
    }
}

fn check_order(alpha: f64) -> Result<()> {
    if alpha >= 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
            lo: 0.0,
            hi: f64::INFINITY,
        })
    }
}

/// Kernel weights w_0..w_n for a summation method at truncation degree n.
///
/// Methods built on the eigenvalue ratio need n >= 1 (lambda_n must be
/// nonzero); the partial and Cesaro weights are defined from n = 0.
pub fn summation_weights(
    ctx: &SphereContext,
    method: KernelMethod,
    n: usize,
) -> Result<Vec<f64>> {
    ctx.check_degree(n)?;
    match method {
        KernelMethod::Partial => Ok(vec![1.0; n + 1]),
        KernelMethod::Riesz { alpha } => {
            check_order(alpha)?;
            if n == 0 {
                return Err(Error::ZeroTruncation);
            }
            let top = ctx.eigenvalue(n);
            Ok((0..=n)
                .map(|k| (1.0 - ctx.eigenvalue(k) / top).powf(alpha))
                .collect())
        }
        KernelMethod::Cesaro { alpha } => {
            check_order(alpha)?;
            let mut table = Vec::with_capacity(n + 1);
            let mut a = 1.0;
            table.push(a);
            for m in 1..=n {
                a *= (alpha + m as f64) / m as f64;
                table.push(a);
            }
            let top = table[n];
            Ok((0..=n).map(|k| table[n - k] / top).collect())
        }
        KernelMethod::AbelRiesz { alpha, tau } => {
            check_order(alpha)?;
            if tau <= 0.0 {
                return Err(Error::NonPositiveTau { tau });
            }
            if n == 0 {
                return Err(Error::ZeroTruncation);
            }
            let top = ctx.eigenvalue(n);
            Ok((0..=n)
                .map(|k| {
                    if k == 0 {
                        0.0
                    } else {
                        let lam = ctx.eigenvalue(k);
                        lam.powf(-tau) * (1.0 - lam / top).powf(alpha)
                    }
                })
                .collect())
        }
    }
}

/// Neumaier-compensated accumulator; used where two algebraically equal
/// summation orders must agree to near machine precision.
#[derive(Debug, Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Zonal harmonic Z_k at t = cos gamma: (d_k / omega_N) * R_k(t).
pub fn zonal_harmonic(ctx: &SphereContext, k: usize, t: f64) -> Result<f64> {
    ctx.check_degree(k)?;
    let ratio = ctx
        .unit_zonal(t)?
        .nth(k)
        .expect("unit zonal iterator is infinite");
    Ok(ctx.zonal_scale(k) * ratio)
}

/// Sum w_k Z_k(t) over k = 0..weights.len()-1 in one recurrence pass.
pub(crate) fn weighted_zonal_sum(ctx: &SphereContext, weights: &[f64], t: f64) -> Result<f64> {
    let mut sum = 0.0;
    for (k, ratio) in ctx.unit_zonal(t)?.take(weights.len()).enumerate() {
        sum += weights[k] * ctx.zonal_scale(k) * ratio;
    }
    Ok(sum)
}

/// Partial-sum kernel sum_{k<=n} Z_k; at gamma = 0 its value is
/// sum d_k / omega_N.
pub fn spectral_kernel(ctx: &SphereContext, n: usize, t: f64) -> Result<f64> {
    let w = summation_weights(ctx, KernelMethod::Partial, n)?;
    weighted_zonal_sum(ctx, &w, t)
}

/// Riesz kernel of order alpha at truncation degree n >= 1.
pub fn riesz_kernel(ctx: &SphereContext, alpha: f64, n: usize, t: f64) -> Result<f64> {
    let w = summation_weights(ctx, KernelMethod::Riesz { alpha }, n)?;
    weighted_zonal_sum(ctx, &w, t)
}

/// Cesaro kernel of order alpha at truncation degree n.
pub fn cesaro_kernel(ctx: &SphereContext, alpha: f64, n: usize, t: f64) -> Result<f64> {
    let w = summation_weights(ctx, KernelMethod::Cesaro { alpha }, n)?;
    weighted_zonal_sum(ctx, &w, t)
}

/// Abel-summed Riesz kernel, directly as sum_{k=1}^n lambda_k^-tau
/// (1 - lambda_k/lambda_n)^alpha Z_k.
pub fn abel_riesz_kernel(
    ctx: &SphereContext,
    alpha: f64,
    tau: f64,
    n: usize,
    t: f64,
) -> Result<f64> {
    let w = summation_weights(ctx, KernelMethod::AbelRiesz { alpha, tau }, n)?;
    let mut sum = Compensated::default();
    for (k, ratio) in ctx.unit_zonal(t)?.take(n + 1).enumerate() {
        sum.add(w[k] * ctx.zonal_scale(k) * ratio);
    }
    Ok(sum.value())
}

/// The same kernel after summation by parts in the damping factor:
///
/// ```text
/// sum_{k=1}^{n-1} (lambda_k^-tau - lambda_{k+1}^-tau) S_k  +  lambda_n^-tau S_n,
/// S_k = sum_{j=1}^k (1 - lambda_j / lambda_n)^alpha Z_j.
/// ```
///
/// S_k keeps the Riesz factor pinned to the outer degree n, which is what
/// makes the rearrangement an exact identity rather than an asymptotic one.
pub fn abel_riesz_kernel_telescoped(
    ctx: &SphereContext,
    alpha: f64,
    tau: f64,
    n: usize,
    t: f64,
) -> Result<f64> {
    check_order(alpha)?;
    if tau <= 0.0 {
        return Err(Error::NonPositiveTau { tau });
    }
    if n == 0 {
        return Err(Error::ZeroTruncation);
    }
    ctx.check_degree(n)?;
    let top = ctx.eigenvalue(n);
    let mut partial = Compensated::default();
    let mut total = Compensated::default();
    for (k, ratio) in ctx.unit_zonal(t)?.take(n + 1).enumerate().skip(1) {
        let weight = (1.0 - ctx.eigenvalue(k) / top).powf(alpha);
        partial.add(weight * ctx.zonal_scale(k) * ratio);
        let damping = if k < n {
            ctx.eigenvalue(k).powf(-tau) - ctx.eigenvalue(k + 1).powf(-tau)
        } else {
            ctx.eigenvalue(n).powf(-tau)
        };
        total.add(damping * partial.value());
    }
    Ok(total.value())
}

/// Validity regime of the kernel size envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundRegime {
    /// Oscillatory window |pi/2 - gamma| < (n/(n+1)) pi/2 (strict; boundary
    /// angles belong to [`BoundRegime::Uniform`]).
    Interior,
    /// All angles.
    Uniform,
    /// Angles in [gamma_min, pi] for a caller-chosen gamma_min > 0.
    AwayFromPole { gamma_min: f64 },
}

impl BoundRegime {
    pub fn label(&self) -> &'static str {
        match self {
            BoundRegime::Interior => "interior",
            BoundRegime::Uniform => "uniform",
            BoundRegime::AwayFromPole { .. } => "away_from_pole",
        }
    }
}

/// Size envelope for order-alpha kernels at truncation degree n, with unit
/// constant; callers fit the constant empirically.
///
/// ```text
/// interior:        n^((N-1)/2) / (sin g)^((N-1)/2) (sin g/2)^(1+alpha)
///                + n^((N-3)/2) / (sin g)^((N+1)/2) (sin g/2)^(1+alpha)
///                + n^-1 / (sin g/2)^(1+N)
/// uniform:         n^N
/// away from pole:  n^(N-alpha)        for gamma in [gamma_min, pi]
/// ```
///
/// Angles outside a regime's validity set are rejected, so a returned value
/// is always a meaningful envelope.
pub fn kernel_bound_envelope(
    ctx: &SphereContext,
    alpha: f64,
    n: usize,
    gamma: f64,
    regime: BoundRegime,
) -> Result<f64> {
    check_order(alpha)?;
    if n == 0 {
        return Err(Error::ZeroTruncation);
    }
    if !(0.0..=std::f64::consts::PI + 1e-12).contains(&gamma) {
        return Err(Error::OutOfRange {
            name: "gamma",
            value: gamma,
            lo: 0.0,
            hi: std::f64::consts::PI,
        });
    }
    let nf = n as f64;
    let dim = ctx.dim_n() as f64;
    match regime {
        BoundRegime::Interior => {
            let window = nf / (nf + 1.0) * std::f64::consts::FRAC_PI_2;
            if !((std::f64::consts::FRAC_PI_2 - gamma).abs() < window) {
                return Err(Error::RegimeDomain { gamma });
            }
            let sin_g = gamma.sin();
            let sin_half = (gamma / 2.0).sin();
            let first = nf.powf((dim - 1.0) / 2.0)
                / (sin_g.powf((dim - 1.0) / 2.0) * sin_half.powf(1.0 + alpha));
            let second = nf.powf((dim - 3.0) / 2.0)
                / (sin_g.powf((dim + 1.0) / 2.0) * sin_half.powf(1.0 + alpha));
            let third = sin_half.powf(1.0 + dim).recip() / nf;
            Ok(first + second + third)
        }
        BoundRegime::Uniform => Ok(nf.powf(dim)),
        BoundRegime::AwayFromPole { gamma_min } => {
            if !(gamma_min > 0.0) {
                return Err(Error::OutOfRange {
                    name: "gamma_min",
                    value: gamma_min,
                    lo: f64::MIN_POSITIVE,
                    hi: std::f64::consts::PI,
                });
            }
            if gamma < gamma_min {
                return Err(Error::RegimeDomain { gamma });
            }
            Ok(nf.powf(dim - alpha))
        }
    }
}

/// A kernel with its truncation degree; construction validates the
/// method/degree combination against the context tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub method: KernelMethod,
    pub degree: usize,
}

impl KernelSpec {
    pub fn new(ctx: &SphereContext, method: KernelMethod, degree: usize) -> Result<Self> {
        // Ratio-based methods cannot use degree 0; reuse the weight builder's
        // validation so the rules never drift apart.
        summation_weights(ctx, method, degree)?;
        Ok(Self { method, degree })
    }
}

/// Kernel values tabulated over an angle grid, optionally with the envelope
/// and the regime that produced it.
#[derive(Debug, Clone)]
pub struct KernelGrid {
    pub spec: KernelSpec,
    pub angles: Vec<f64>,
    pub values: Vec<f64>,
    pub envelope: Option<Vec<(f64, BoundRegime)>>,
}

impl KernelGrid {
    /// Evaluate the kernel at each angle; weights are built once.
    pub fn compute(ctx: &SphereContext, spec: KernelSpec, angles: &[f64]) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::BadGrid {
                kind: "angle",
                reason: "empty",
            });
        }
        let weights = summation_weights(ctx, spec.method, spec.degree)?;
        let values = angles
            .iter()
            .map(|&g| weighted_zonal_sum(ctx, &weights, g.cos()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            spec,
            angles: angles.to_vec(),
            values,
            envelope: None,
        })
    }

    /// Attach the unit-constant envelope to each angle: the interior bound
    /// where that regime is valid, the uniform bound elsewhere (regime
    /// boundaries included).
    pub fn attach_envelope(&mut self, ctx: &SphereContext) -> Result<()> {
        let alpha = self.spec.method.envelope_order();
        let n = self.spec.degree.max(1);
        let mut rows = Vec::with_capacity(self.angles.len());
        for &gamma in &self.angles {
            let row = match kernel_bound_envelope(ctx, alpha, n, gamma, BoundRegime::Interior) {
                Ok(b) => (b, BoundRegime::Interior),
                Err(Error::RegimeDomain { .. }) => (
                    kernel_bound_envelope(ctx, alpha, n, gamma, BoundRegime::Uniform)?,
                    BoundRegime::Uniform,
                ),
                Err(e) => return Err(e),
            };
            rows.push(row);
        }
        self.envelope = Some(rows);
        Ok(())
    }

    /// Dump as `gamma,value,bound,regime`; the last two columns are empty
    /// when no envelope was attached.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "gamma,value,bound,regime")?;
        for (i, (&gamma, &value)) in self.angles.iter().zip(&self.values).enumerate() {
            match &self.envelope {
                Some(rows) => {
                    let (bound, regime) = rows[i];
                    writeln!(
                        out,
                        "{},{},{},{}",
                        csv_number(gamma),
                        csv_number(value),
                        csv_number(bound),
                        regime.label()
                    )?;
                }
                None => writeln!(out, "{},{},,", csv_number(gamma), csv_number(value))?,
            }
        }
        Ok(())
    }
}

/// Render a float with 17 significant digits, enough for exact f64
/// round-trips, in plain scientific notation.
pub fn csv_number(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x }; // normalize -0.0
    format!("{:.16e}", x)
}
