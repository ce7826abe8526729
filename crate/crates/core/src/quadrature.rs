//! Gauss-Legendre quadrature and the reductions that turn sphere integrals
//! of zonal functions into one- and two-dimensional rule applications.
//!
//! A zonal integrand F(gamma) integrates over S^N as
//!
//! ```text
//! integral = omega_{N-1} * int_{-1}^{1} F(arccos t) (1 - t^2)^((N-2)/2) dt,   t = cos gamma.
//! ```
//!
//! For even N the weight (1 - t^2)^((N-2)/2) is a polynomial and the rule is
//! exact once its degree capacity covers integrand plus weight. For odd N the
//! weight has square-root branch points at t = +-1, which would drag an
//! algebraic error tail into every integral; those integrals are computed
//! after the additional substitution s = sqrt(1 -+ t) (half-angle map), which
//! restores an analytic integrand and with it spectral accuracy. Both paths
//! evaluate the same integral; only the change of variables differs.

use crate::context::SphereContext;
use crate::error::{Error, Result};
use crate::special::surface_area;

const MAX_NODES: usize = 100_000;
const NEWTON_LIMIT: usize = 100;

/// Nodes and weights of a rule on [-1, 1] with positive weights summing to 2.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Legendre value P_m(x) and derivative P'_m(x) by forward recurrence;
/// the derivative uses m (x P_m - P_{m-1}) / (x^2 - 1), so x must be
/// strictly interior.
fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    let mut cur = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=m {
        let jf = j as f64;
        let next = ((2.0 * jf - 1.0) * x * cur - (jf - 1.0) * prev) / jf;
        prev = cur;
        cur = next;
    }
    let derivative = m as f64 * (x * cur - prev) / (x * x - 1.0);
    (cur, derivative)
}

impl QuadratureRule {
    /// Gauss-Legendre rule with `m` nodes: roots of P_m by Newton iteration
    /// from the Chebyshev-like initial guess cos(pi (i + 3/4) / (m + 1/2)),
    /// weights 2 / ((1 - x^2) P'_m(x)^2).
    pub fn gauss_legendre(m: usize) -> Result<Self> {
        if m < 1 || m > MAX_NODES {
            return Err(Error::OutOfRange {
                name: "node count",
                value: m as f64,
                lo: 1.0,
                hi: MAX_NODES as f64,
            });
        }
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        // The roots are symmetric about 0; solve the positive half and mirror.
        for i in 0..m.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut converged = false;
            let mut derivative = 0.0;
            for _ in 0..NEWTON_LIMIT {
                let (value, slope) = legendre_with_derivative(m, x);
                derivative = slope;
                let step = value / slope;
                x -= step;
                if step.abs() <= 1e-15 {
                    // One polishing step after reaching roundoff level.
                    let (value, slope) = legendre_with_derivative(m, x);
                    derivative = slope;
                    x -= value / slope;
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::NodeDiverged {
                    index: i,
                    steps: NEWTON_LIMIT,
                });
            }
            if 2 * i + 1 == m {
                x = 0.0;
                let (_, slope) = legendre_with_derivative(m, 0.0);
                derivative = slope;
            }
            let w = 2.0 / ((1.0 - x * x) * derivative * derivative);
            // Initial guesses descend from +1, so index i is the i-th largest.
            nodes[m - 1 - i] = x;
            weights[m - 1 - i] = w;
            nodes[i] = -x;
            weights[i] = w;
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Highest polynomial degree integrated exactly: 2m - 1.
    pub fn capacity(&self) -> usize {
        2 * self.nodes.len() - 1
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Apply the rule on its native interval [-1, 1].
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Apply the rule mapped affinely onto [a, b].
    pub fn integrate_on(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self.integrate(|x| f(mid + half * x))
    }
}

fn check_angle_range(lo: f64, hi: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::PI + 1e-12).contains(&lo) || hi > std::f64::consts::PI + 1e-12 {
        return Err(Error::OutOfRange {
            name: "angle range",
            value: if lo < 0.0 { lo } else { hi },
            lo: 0.0,
            hi: std::f64::consts::PI,
        });
    }
    if lo > hi {
        return Err(Error::BadGrid {
            kind: "angle range",
            reason: "lower endpoint exceeds upper endpoint",
        });
    }
    Ok(())
}

fn clamp_unit(c: f64) -> f64 {
    c.clamp(-1.0, 1.0)
}

/// int_lo^hi f(gamma) sin^(dim_n - 1)(gamma) d gamma.
///
/// Even dim_n applies the rule directly in t = cos gamma, where the weight is
/// the polynomial (1 - t^2)^((dim_n-2)/2); odd dim_n splits at the equator and
/// applies the half-angle substitutions s = sqrt(1 - t), u = sqrt(1 + t) so
/// the integrand stays analytic at the poles.
pub fn sin_power_integral(
    dim_n: u32,
    lo: f64,
    hi: f64,
    rule: &QuadratureRule,
    f: impl Fn(f64) -> f64,
) -> Result<f64> {
    check_angle_range(lo, hi)?;
    let hi = hi.min(std::f64::consts::PI);
    if hi - lo <= 0.0 {
        return Ok(0.0);
    }
    if dim_n % 2 == 0 {
        let e = (dim_n as i32 - 2) / 2;
        let t_lo = hi.cos();
        let t_hi = lo.cos();
        return Ok(rule.integrate_on(t_lo, t_hi, |t| {
            let t = clamp_unit(t);
            f(t.acos()) * (1.0 - t * t).powi(e)
        }));
    }
    // Odd dim_n: exponent (dim_n - 2)/2 is half-integer.
    let half_exp = (dim_n as f64 - 2.0) / 2.0;
    let mut total = 0.0;
    let equator = std::f64::consts::FRAC_PI_2;
    if lo < equator {
        // gamma in [lo, min(hi, pi/2)]: t = 1 - s^2.
        let s_lo = (1.0 - lo.cos()).max(0.0).sqrt();
        let s_hi = (1.0 - hi.min(equator).cos()).max(0.0).sqrt();
        total += rule.integrate_on(s_lo, s_hi, |s| {
            let t = clamp_unit(1.0 - s * s);
            2.0 * s.powi(dim_n as i32 - 1) * (2.0 - s * s).powf(half_exp) * f(t.acos())
        });
    }
    if hi > equator {
        // gamma in [max(lo, pi/2), hi]: t = u^2 - 1, u decreasing in gamma.
        let u_hi = (1.0 + lo.max(equator).cos()).max(0.0).sqrt();
        let u_lo = (1.0 + hi.cos()).max(0.0).sqrt();
        total += rule.integrate_on(u_lo, u_hi, |u| {
            let t = clamp_unit(u * u - 1.0);
            2.0 * u.powi(dim_n as i32 - 1) * (2.0 - u * u).powf(half_exp) * f(t.acos())
        });
    }
    Ok(total)
}

/// Materialized nodes for int_lo^hi f(gamma) sin^(dim_n - 1)(gamma) d gamma:
/// pairs (gamma_i, w_i) such that sum_i w_i f(gamma_i) approximates the
/// integral with the same substitutions as [`sin_power_integral`].
///
/// Use this when many integrands share one node set — for instance a batch
/// of projections evaluating a recurrence at every node — so the per-node
/// work is paid once. One-off integrals should prefer
/// [`sin_power_integral`], which allocates nothing.
pub fn sin_power_nodes(
    dim_n: u32,
    lo: f64,
    hi: f64,
    rule: &QuadratureRule,
) -> Result<Vec<(f64, f64)>> {
    check_angle_range(lo, hi)?;
    let hi = hi.min(std::f64::consts::PI);
    let mut out = Vec::new();
    if hi - lo <= 0.0 {
        return Ok(out);
    }
    let push_affine = |out: &mut Vec<(f64, f64)>, a: f64, b: f64, to_pair: &dyn Fn(f64) -> (f64, f64)| {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
            let (gamma, density) = to_pair(mid + half * x);
            out.push((gamma, half * w * density));
        }
    };
    if dim_n % 2 == 0 {
        let e = (dim_n as i32 - 2) / 2;
        push_affine(&mut out, hi.cos(), lo.cos(), &|t| {
            let t = clamp_unit(t);
            (t.acos(), (1.0 - t * t).powi(e))
        });
        return Ok(out);
    }
    let half_exp = (dim_n as f64 - 2.0) / 2.0;
    let equator = std::f64::consts::FRAC_PI_2;
    if lo < equator {
        let s_lo = (1.0 - lo.cos()).max(0.0).sqrt();
        let s_hi = (1.0 - hi.min(equator).cos()).max(0.0).sqrt();
        push_affine(&mut out, s_lo, s_hi, &|s| {
            let t = clamp_unit(1.0 - s * s);
            (
                t.acos(),
                2.0 * s.powi(dim_n as i32 - 1) * (2.0 - s * s).powf(half_exp),
            )
        });
    }
    if hi > equator {
        let u_hi = (1.0 + lo.max(equator).cos()).max(0.0).sqrt();
        let u_lo = (1.0 + hi.cos()).max(0.0).sqrt();
        push_affine(&mut out, u_lo, u_hi, &|u| {
            let t = clamp_unit(u * u - 1.0);
            (
                t.acos(),
                2.0 * u.powi(dim_n as i32 - 1) * (2.0 - u * u).powf(half_exp),
            )
        });
    }
    Ok(out)
}

/// Integral over S^N of a zonal profile F(gamma):
/// omega_{N-1} int_0^pi F sin^(N-1).
pub fn zonal_integral(
    ctx: &SphereContext,
    rule: &QuadratureRule,
    f: impl Fn(f64) -> f64,
) -> Result<f64> {
    Ok(ctx.equator_area()
        * sin_power_integral(ctx.dim_n(), 0.0, std::f64::consts::PI, rule, f)?)
}

/// Surface measure of a geodesic ball of radius r (any center).
pub fn cap_measure(ctx: &SphereContext, r: f64, rule: &QuadratureRule) -> Result<f64> {
    check_radius(r)?;
    Ok(ctx.equator_area() * sin_power_integral(ctx.dim_n(), 0.0, r, rule, |_| 1.0)?)
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r <= std::f64::consts::PI + 1e-12 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "cap radius",
            value: r,
            lo: f64::MIN_POSITIVE,
            hi: std::f64::consts::PI,
        })
    }
}

/// Integral over the spherical shell { y : lo <= gamma(x, y) <= hi } of
/// radial(gamma(x, y)) * profile(gamma(pole, y)), where x sits at angle
/// `x_angle` from the pole.
///
/// The measure is decomposed about x: with psi = gamma(x, y) and phi the
/// azimuth of y around x (x and the pole share the azimuth origin),
///
/// ```text
/// cos gamma(pole, y) = cos x_angle cos psi + sin x_angle sin psi cos phi,
/// ```
///
/// the radial factor depends on psi alone, and the profile is averaged over
/// the azimuth sphere S^(N-1) for each psi. On the circle (N = 1) the azimuth
/// sphere is the two-point set phi in {0, pi}.
///
/// `polar_rule` resolves the psi direction (it must track the oscillation of
/// `radial`); `azimuth_rule` only ever sees the smooth profile.
pub fn offset_zonal_integral(
    ctx: &SphereContext,
    x_angle: f64,
    lo: f64,
    hi: f64,
    polar_rule: &QuadratureRule,
    azimuth_rule: &QuadratureRule,
    radial: impl Fn(f64) -> f64,
    profile: impl Fn(f64) -> f64,
) -> Result<f64> {
    check_angle_range(0.0, x_angle)?;
    let dim = ctx.dim_n();
    let cx = x_angle.cos();
    let sx = x_angle.sin();
    if sx.abs() < 1e-14 {
        // x at a pole: gamma(pole, y) is psi itself (or its reflection).
        let reflect = cx < 0.0;
        let full_azimuth = ctx.equator_area();
        return sin_power_integral(dim, lo, hi, polar_rule, |psi| {
            let gamma_e = if reflect { std::f64::consts::PI - psi } else { psi };
            radial(psi) * profile(gamma_e) * full_azimuth
        });
    }
    let azimuth_area = if dim >= 2 { surface_area(dim - 2) } else { 0.0 };
    sin_power_integral(dim, lo, hi, polar_rule, |psi| {
        let (cp, sp) = (psi.cos(), psi.sin());
        let base = cx * cp;
        let swing = sx * sp;
        let averaged = if dim == 1 {
            profile(clamp_unit(base + swing).acos()) + profile(clamp_unit(base - swing).acos())
        } else {
            azimuth_area
                * sin_power_integral(dim - 1, 0.0, std::f64::consts::PI, azimuth_rule, |phi| {
                    profile(clamp_unit(base + swing * phi.cos()).acos())
                })
                .expect("azimuth range is fixed and valid")
        };
        radial(psi) * averaged
    })
}

/// Average of a zonal profile over the geodesic ball of radius r centered at
/// angle `center` from the pole.
///
/// For center = 0 this collapses to the 1-D reduction
/// omega_{N-1} int_0^r F sin^(N-1) / mes; other centers average the profile
/// over each azimuth circle first.
pub fn cap_average(
    ctx: &SphereContext,
    center: f64,
    r: f64,
    polar_rule: &QuadratureRule,
    azimuth_rule: &QuadratureRule,
    profile: impl Fn(f64) -> f64,
) -> Result<f64> {
    check_radius(r)?;
    let r = r.min(std::f64::consts::PI);
    let mass = offset_zonal_integral(
        ctx,
        center,
        0.0,
        r,
        polar_rule,
        azimuth_rule,
        |_| 1.0,
        profile,
    )?;
    let measure = cap_measure(ctx, r, polar_rule)?;
    Ok(mass / measure)
}
