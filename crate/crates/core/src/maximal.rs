//! Maximal operators, telescoped bound series, and the four-region
//! decomposition of convolution integrals.
//!
//! The two maximal operators are desk-scale discretizations: the summation
//! maximal function takes the largest mean over a finite grid of truncation
//! degrees, and the averaging maximal function takes the largest cap
//! average of |g| over a finite grid of radii. The grids are explicit
//! configuration so refinement studies can control them exactly; enlarging
//! either grid can only increase the reported values.

use std::io::{self, Write};

use crate::context::SphereContext;
use crate::error::{Error, Result};
use crate::kernels::{csv_number, summation_weights, weighted_zonal_sum, KernelMethod};
use crate::quadrature::{cap_average, offset_zonal_integral, QuadratureRule};
use crate::spectral::{apply_summation, ZonalFunction};

/// Grids over which the maximal operators are taken and reported.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalConfig {
    /// Truncation degrees for the summation maximal function; ascending,
    /// all at least 1.
    pub degrees: Vec<usize>,
    /// Cap radii for the averaging maximal function; ascending, in (0, pi].
    pub radii: Vec<f64>,
    /// Polar angles at which maximal values are reported; ascending, in
    /// [0, pi].
    pub eval_angles: Vec<f64>,
}

impl MaximalConfig {
    /// Powers of two up to `max_degree`, with `max_degree` itself appended
    /// when it is not a power of two.
    pub fn dyadic_degrees(max_degree: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut d = 1usize;
        while d <= max_degree {
            out.push(d);
            d *= 2;
        }
        if *out.last().unwrap_or(&0) != max_degree && max_degree >= 1 {
            out.push(max_degree);
        }
        out
    }

    /// `count` radii geometrically spaced from `r_min` up to pi inclusive.
    pub fn geometric_radii(count: usize, r_min: f64) -> Result<Vec<f64>> {
        if count < 2 {
            return Err(Error::BadGrid {
                kind: "radii",
                reason: "needs at least two radii",
            });
        }
        if !(r_min > 0.0 && r_min < std::f64::consts::PI) {
            return Err(Error::OutOfRange {
                name: "r_min",
                value: r_min,
                lo: f64::MIN_POSITIVE,
                hi: std::f64::consts::PI,
            });
        }
        let step = (std::f64::consts::PI / r_min).ln() / (count - 1) as f64;
        let mut radii: Vec<f64> = (0..count)
            .map(|i| r_min * (step * i as f64).exp())
            .collect();
        radii[count - 1] = std::f64::consts::PI;
        Ok(radii)
    }

    /// `count` angles evenly spaced over [0, pi], endpoints included.
    pub fn uniform_angles(count: usize) -> Result<Vec<f64>> {
        if count < 2 {
            return Err(Error::BadGrid {
                kind: "angles",
                reason: "needs at least two angles",
            });
        }
        Ok((0..count)
            .map(|i| std::f64::consts::PI * i as f64 / (count - 1) as f64)
            .collect())
    }

    pub fn new(degrees: Vec<usize>, radii: Vec<f64>, eval_angles: Vec<f64>) -> Result<Self> {
        let cfg = Self {
            degrees,
            radii,
            eval_angles,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.degrees.is_empty() || self.degrees[0] == 0 {
            return Err(Error::BadGrid {
                kind: "degrees",
                reason: "empty or starting at zero",
            });
        }
        if !self.degrees.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::BadGrid {
                kind: "degrees",
                reason: "not strictly ascending",
            });
        }
        if self.radii.is_empty()
            || self.radii[0] <= 0.0
            || *self.radii.last().unwrap() > std::f64::consts::PI + 1e-12
        {
            return Err(Error::BadGrid {
                kind: "radii",
                reason: "empty or outside (0, pi]",
            });
        }
        if !self.radii.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::BadGrid {
                kind: "radii",
                reason: "not strictly ascending",
            });
        }
        if self.eval_angles.is_empty()
            || self.eval_angles[0] < 0.0
            || *self.eval_angles.last().unwrap() > std::f64::consts::PI + 1e-12
        {
            return Err(Error::BadGrid {
                kind: "angles",
                reason: "empty or outside [0, pi]",
            });
        }
        if !self.eval_angles.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::BadGrid {
                kind: "angles",
                reason: "not strictly ascending",
            });
        }
        Ok(())
    }

    /// Refine the radii grid by inserting the geometric midpoint between
    /// consecutive radii. Existing radii are carried over bit for bit, so
    /// averages computed on the coarse grid recur exactly in the fine one.
    pub fn refine_radii(&self) -> Self {
        let mut radii = Vec::with_capacity(2 * self.radii.len() - 1);
        for w in self.radii.windows(2) {
            radii.push(w[0]);
            radii.push((w[0] * w[1]).sqrt());
        }
        radii.push(*self.radii.last().expect("validated non-empty"));
        Self {
            degrees: self.degrees.clone(),
            radii,
            eval_angles: self.eval_angles.clone(),
        }
    }

    /// Refine the degree grid by inserting integer midpoints between
    /// consecutive degrees (where a gap exists). Existing degrees survive
    /// unchanged.
    pub fn refine_degrees(&self) -> Self {
        let mut degrees = Vec::with_capacity(2 * self.degrees.len());
        for w in self.degrees.windows(2) {
            degrees.push(w[0]);
            let mid = (w[0] + w[1]) / 2;
            if mid > w[0] && mid < w[1] {
                degrees.push(mid);
            }
        }
        degrees.push(*self.degrees.last().expect("validated non-empty"));
        Self {
            degrees,
            radii: self.radii.clone(),
            eval_angles: self.eval_angles.clone(),
        }
    }
}

/// A maximal-operator profile over the evaluation angles: the maximal value
/// and the grid index that attained it.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalProfile {
    pub angles: Vec<f64>,
    pub values: Vec<f64>,
    /// Index into the degree grid (summation operator) or radii grid
    /// (averaging operator) attaining the maximum.
    pub argmax: Vec<usize>,
}

impl MaximalProfile {
    /// Dump as `gamma,maximal_value,argmax_index`.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "gamma,maximal_value,argmax_index")?;
        for i in 0..self.angles.len() {
            writeln!(
                out,
                "{},{},{}",
                csv_number(self.angles[i]),
                csv_number(self.values[i]),
                self.argmax[i]
            )?;
        }
        Ok(())
    }
}

/// Largest order-alpha mean of f at one angle over a grid of truncation
/// degrees.
pub fn maximal_riesz_at(
    ctx: &SphereContext,
    f: &ZonalFunction,
    alpha: f64,
    degrees: &[usize],
    gamma: f64,
) -> Result<f64> {
    if degrees.is_empty() {
        return Err(Error::BadGrid {
            kind: "degrees",
            reason: "empty",
        });
    }
    let mut best = 0.0f64;
    for &n in degrees {
        let mean = apply_summation(ctx, f, KernelMethod::Riesz { alpha }, n)?;
        best = best.max(mean.evaluate(ctx, gamma)?.abs());
    }
    Ok(best)
}

/// The summation maximal function over the configured evaluation angles:
/// at each angle, the largest |order-alpha mean of f| over the degree grid.
pub fn maximal_riesz(
    ctx: &SphereContext,
    f: &ZonalFunction,
    alpha: f64,
    cfg: &MaximalConfig,
) -> Result<MaximalProfile> {
    cfg.validate()?;
    let m = cfg.eval_angles.len();
    let mut values = vec![0.0f64; m];
    let mut argmax = vec![0usize; m];
    for (j, &n) in cfg.degrees.iter().enumerate() {
        let mean = apply_summation(ctx, f, KernelMethod::Riesz { alpha }, n)?;
        for (i, &gamma) in cfg.eval_angles.iter().enumerate() {
            let v = mean.evaluate(ctx, gamma)?.abs();
            if v > values[i] {
                values[i] = v;
                argmax[i] = j;
            }
        }
    }
    Ok(MaximalProfile {
        angles: cfg.eval_angles.clone(),
        values,
        argmax,
    })
}

/// Largest cap average of |profile| centered at one polar angle over a grid
/// of radii. Each average is computed from scratch for its (center, radius)
/// pair, so the value at a radius does not depend on what else is in the
/// grid.
pub fn hl_maximal_at(
    ctx: &SphereContext,
    center: f64,
    radii: &[f64],
    polar_rule: &QuadratureRule,
    azimuth_rule: &QuadratureRule,
    profile: impl Fn(f64) -> f64,
) -> Result<f64> {
    if radii.is_empty() {
        return Err(Error::BadGrid {
            kind: "radii",
            reason: "empty",
        });
    }
    let magnitude = |g: f64| profile(g).abs();
    let mut best = 0.0f64;
    for &r in radii {
        let avg = cap_average(ctx, center, r, polar_rule, azimuth_rule, &magnitude)?;
        best = best.max(avg);
    }
    Ok(best)
}

/// The averaging maximal function over the configured evaluation angles:
/// at each angle, the largest average of |profile| over caps centered there
/// with radii from the grid.
pub fn hl_maximal(
    ctx: &SphereContext,
    cfg: &MaximalConfig,
    polar_rule: &QuadratureRule,
    azimuth_rule: &QuadratureRule,
    profile: impl Fn(f64) -> f64,
) -> Result<MaximalProfile> {
    cfg.validate()?;
    let magnitude = |g: f64| profile(g).abs();
    let m = cfg.eval_angles.len();
    let mut values = vec![0.0f64; m];
    let mut argmax = vec![0usize; m];
    for (i, &center) in cfg.eval_angles.iter().enumerate() {
        for (j, &r) in cfg.radii.iter().enumerate() {
            let avg = cap_average(ctx, center, r, polar_rule, azimuth_rule, &magnitude)?;
            if avg > values[i] {
                values[i] = avg;
                argmax[i] = j;
            }
        }
    }
    Ok(MaximalProfile {
        angles: cfg.eval_angles.clone(),
        values,
        argmax,
    })
}

/// Partial sums of the telescoped tail bound and of its power-law
/// comparison series.
///
/// ```text
/// telescoped term k:  (lambda_k^(-tau/2) - lambda_{k+1}^(-tau/2)) (1 + k^((N-1)/2 - alpha))
/// comparison term k:  k^((N-1)/2 - alpha - tau - 1)
/// ```
///
/// `partial_telescoped[i]` and `partial_comparison[i]` hold the sums of the
/// first i+1 terms (k = 1..=i+1). tau = 0 is allowed and collapses every
/// telescoped difference to zero.
#[derive(Debug, Clone)]
pub struct BoundSeries {
    pub partial_telescoped: Vec<f64>,
    pub partial_comparison: Vec<f64>,
}

impl BoundSeries {
    /// Sum of telescoped terms k = from+1 ..= to.
    pub fn telescoped_tail(&self, from: usize, to: usize) -> f64 {
        self.partial_telescoped[to - 1]
            - if from == 0 {
                0.0
            } else {
                self.partial_telescoped[from - 1]
            }
    }

    /// Sum of comparison terms k = from+1 ..= to.
    pub fn comparison_tail(&self, from: usize, to: usize) -> f64 {
        self.partial_comparison[to - 1]
            - if from == 0 {
                0.0
            } else {
                self.partial_comparison[from - 1]
            }
    }
}

/// Tabulate [`BoundSeries`] out to `n_terms` terms.
pub fn bound_series(dim_n: u32, alpha: f64, tau: f64, n_terms: usize) -> Result<BoundSeries> {
    if dim_n == 0 {
        return Err(Error::OutOfRange {
            name: "dim_n",
            value: 0.0,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    if alpha < 0.0 {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    if tau < 0.0 {
        return Err(Error::NonPositiveTau { tau });
    }
    if n_terms == 0 {
        return Err(Error::ZeroTruncation);
    }
    let lam = |k: usize| (k as f64) * (k as f64 + dim_n as f64 - 1.0);
    let growth = (dim_n as f64 - 1.0) / 2.0 - alpha;
    let mut partial_telescoped = Vec::with_capacity(n_terms);
    let mut partial_comparison = Vec::with_capacity(n_terms);
    let mut tel = 0.0;
    let mut cmp = 0.0;
    for k in 1..=n_terms {
        let kf = k as f64;
        let diff = lam(k).powf(-tau / 2.0) - lam(k + 1).powf(-tau / 2.0);
        tel += diff * (1.0 + kf.powf(growth));
        cmp += kf.powf(growth - tau - 1.0);
        partial_telescoped.push(tel);
        partial_comparison.push(cmp);
    }
    Ok(BoundSeries {
        partial_telescoped,
        partial_comparison,
    })
}

/// A convolution-type integral split over four distance regions around the
/// base point x: within 1/n of x, out to the equator of x, out to within
/// 1/n of the antipode, and the antipodal cap.
#[derive(Debug, Clone, Copy)]
pub struct FourPartSplit {
    /// Region integrals, nearest to farthest.
    pub parts: [f64; 4],
    /// The same integral taken over the whole sphere in one piece.
    pub whole: f64,
}

impl FourPartSplit {
    pub fn total(&self) -> f64 {
        self.parts.iter().sum()
    }

    /// Breakpoints [0, 1/n, pi/2, pi - 1/n, pi] of the four regions.
    pub fn breakpoints(n: usize) -> [f64; 5] {
        let inv = 1.0 / n as f64;
        [
            0.0,
            inv,
            std::f64::consts::FRAC_PI_2,
            std::f64::consts::PI - inv,
            std::f64::consts::PI,
        ]
    }
}

/// Integrate radial(psi) * profile(gamma) over each of the four regions
/// psi in [0, 1/n), [1/n, pi/2], (pi/2, pi - 1/n], (pi - 1/n, pi], where
/// psi is the angle to the base point at polar angle `x_angle` and gamma
/// the angle to the pole, and also in one sweep for comparison.
pub fn four_part_split(
    ctx: &SphereContext,
    x_angle: f64,
    n: usize,
    polar_rule: &QuadratureRule,
    azimuth_rule: &QuadratureRule,
    radial: impl Fn(f64) -> f64,
    profile: impl Fn(f64) -> f64,
) -> Result<FourPartSplit> {
    if n == 0 {
        return Err(Error::ZeroTruncation);
    }
    let cuts = FourPartSplit::breakpoints(n);
    if cuts[1] >= cuts[2] {
        return Err(Error::BadGrid {
            kind: "split",
            reason: "1/n reaches the equator; use a larger degree",
        });
    }
    let mut parts = [0.0; 4];
    for (i, w) in cuts.windows(2).enumerate() {
        parts[i] = offset_zonal_integral(
            ctx,
            x_angle,
            w[0],
            w[1],
            polar_rule,
            azimuth_rule,
            &radial,
            &profile,
        )?;
    }
    let whole = offset_zonal_integral(
        ctx,
        x_angle,
        0.0,
        std::f64::consts::PI,
        polar_rule,
        azimuth_rule,
        &radial,
        &profile,
    )?;
    Ok(FourPartSplit { parts, whole })
}

/// [`four_part_split`] with the radial factor fixed to the order-alpha
/// kernel at truncation degree n: the four pieces of the convolution of
/// `profile` against that kernel, based at `x_angle`.
pub fn riesz_four_part_split(
    ctx: &SphereContext,
    x_angle: f64,
    alpha: f64,
    n: usize,
    polar_rule: &QuadratureRule,
    azimuth_rule: &QuadratureRule,
    profile: impl Fn(f64) -> f64,
) -> Result<FourPartSplit> {
    let weights = summation_weights(ctx, KernelMethod::Riesz { alpha }, n)?;
    four_part_split(
        ctx,
        x_angle,
        n,
        polar_rule,
        azimuth_rule,
        |psi| weighted_zonal_sum(ctx, &weights, psi.cos()).expect("cosine in range"),
        profile,
    )
}
