//! Scalar special functions for harmonic analysis on the unit N-sphere S^N
//! (the sphere sitting in R^(N+1)).
//!
//! Everything degree- or dimension-valued is computed in exact integer
//! arithmetic and only converted to `f64` at the boundary; the polynomial
//! evaluations use forward three-term recurrences, which are stable on the
//! interval [-1, 1] used here.

use crate::error::{Error, Result};

/// Tolerance for arguments nominally in [-1, 1]: values within this distance
/// outside the interval are clamped, anything farther is rejected.
pub const ENDPOINT_SLACK: f64 = 1e-12;

/// Laplace-Beltrami eigenvalue on S^N for harmonic degree k: k (k + N - 1).
///
/// Consecutive eigenvalues differ by 2k + N, so the sequence is strictly
/// increasing from 0.
pub fn eigenvalue(dim_n: u32, k: usize) -> f64 {
    let k = k as u128;
    (k * (k + dim_n as u128 - 1)) as f64
}

/// Exact binomial coefficient, `None` on 128-bit overflow.
///
/// The running product after step i equals C(n - r + i, i), so every division
/// is exact.
pub(crate) fn binomial(n: u128, r: u128) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut c: u128 = 1;
    for i in 1..=r {
        c = c.checked_mul(n - r + i)? / i;
    }
    Some(c)
}

/// Dimension of the space of spherical harmonics of degree k on S^N,
/// as the exact integer C(N + k, N) - C(N + k - 2, N).
///
/// The difference form covers every case uniformly: k = 0 gives 1, N = 1
/// gives 2 for all k >= 1 (circle: cos and sin modes), N >= 2 matches
/// (2k + N - 1) / (N - 1) * C(k + N - 2, k).
pub fn harmonic_dimension(dim_n: u32, k: usize) -> Result<u128> {
    let n = dim_n as u128;
    let k = k as u128;
    let overflow = || Error::TableOverflow {
        dim_n,
        degree: k as usize,
    };
    let upper = binomial(n + k, n).ok_or_else(overflow)?;
    let lower = if n + k >= 2 {
        binomial(n + k - 2, n).ok_or_else(overflow)?
    } else {
        0
    };
    Ok(upper - lower)
}

/// Gamma function at half-integer argument `twice`/2, exact up to rounding.
///
/// Integer arguments use the factorial; odd `twice` = 2m + 1 uses
/// Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi).
fn gamma_half(twice: u32) -> f64 {
    if twice % 2 == 0 {
        let m = twice / 2;
        (1..m).fold(1.0, |acc, i| acc * i as f64)
    } else {
        let m = twice / 2;
        let mut value = std::f64::consts::PI.sqrt();
        // Multiply the ratio (2m)! / (4^m m!) one factor at a time: step i
        // contributes (2i - 1) / 2.
        for i in 1..=m {
            value *= (2 * i - 1) as f64 / 2.0;
        }
        value
    }
}

/// Surface area of S^N: 2 pi^((N+1)/2) / Gamma((N+1)/2).
///
/// N = 0 is the two-point sphere with counting measure 2; the classical
/// values 2 pi, 4 pi, 2 pi^2 follow for N = 1, 2, 3.
pub fn surface_area(dim_n: u32) -> f64 {
    let half_exponent = dim_n + 1;
    let pi_power = std::f64::consts::PI.powf(half_exponent as f64 / 2.0);
    2.0 * pi_power / gamma_half(half_exponent)
}

fn clamp_to_unit(name: &'static str, t: f64) -> Result<f64> {
    if t.abs() <= 1.0 {
        Ok(t)
    } else if t.abs() <= 1.0 + ENDPOINT_SLACK {
        Ok(t.clamp(-1.0, 1.0))
    } else {
        Err(Error::OutOfRange {
            name,
            value: t,
            lo: -1.0,
            hi: 1.0,
        })
    }
}

/// Gegenbauer (ultraspherical) polynomial C_k^lambda(t) for lambda > 0 and
/// t in [-1, 1], by the forward recurrence
///
/// ```text
/// C_0 = 1,  C_1 = 2 lambda t,
/// k C_k = 2 t (k + lambda - 1) C_{k-1} - (k + 2 lambda - 2) C_{k-2}.
/// ```
///
/// lambda = 1/2 gives the Legendre polynomials. At t = 1 the value is the
/// binomial C(k + 2 lambda - 1, k), which [`cesaro_coefficient`] computes
/// with order 2 lambda - 1.
pub fn gegenbauer(k: usize, lambda: f64, t: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::OutOfRange {
            name: "lambda",
            value: lambda,
            lo: f64::MIN_POSITIVE,
            hi: f64::INFINITY,
        });
    }
    let t = clamp_to_unit("t", t)?;
    let mut prev = 1.0;
    if k == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * lambda * t;
    for j in 2..=k {
        let jf = j as f64;
        let next =
            (2.0 * t * (jf + lambda - 1.0) * cur - (jf + 2.0 * lambda - 2.0) * prev) / jf;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Cesaro coefficient A_m^alpha = (alpha+1)(alpha+2)...(alpha+m) / m!,
/// via A_0 = 1, A_m = A_{m-1} (alpha + m) / m.
///
/// Strictly positive for alpha > -1; A_m^0 = 1 exactly (each recurrence step
/// multiplies by m/m); A_m^alpha grows like m^alpha / Gamma(alpha + 1).
pub fn cesaro_coefficient(m: usize, alpha: f64) -> Result<f64> {
    if !(alpha > -1.0) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
            lo: -1.0,
            hi: f64::INFINITY,
        });
    }
    let mut a = 1.0;
    for i in 1..=m {
        a *= (alpha + i as f64) / i as f64;
    }
    Ok(a)
}

/// Iterator over the unit-normalized Gegenbauer values
/// R_k(t) = C_k^lambda(t) / C_k^lambda(1), k = 0, 1, 2, ...
///
/// Dividing the three-term recurrence by C_k^lambda(1) gives
///
/// ```text
/// R_0 = 1,  R_1 = t,
/// R_k = (2 t (k + lambda - 1) R_{k-1} - (k - 1) R_{k-2}) / (k + 2 lambda - 1),
/// ```
///
/// which keeps every value in [-1, 1] and never forms the huge unnormalized
/// C_k^lambda(1). At lambda = 0 the same recurrence degenerates to the
/// Chebyshev cosine recurrence R_k = 2 t R_{k-1} - R_{k-2}, which is exactly
/// the circle (N = 1) zonal profile cos(k gamma); that case is therefore
/// permitted here even though [`gegenbauer`] itself requires lambda > 0.
#[derive(Debug, Clone)]
pub struct UnitGegenbauer {
    lambda: f64,
    t: f64,
    k: usize,
    prev: f64,
    cur: f64,
}

impl UnitGegenbauer {
    pub fn new(lambda: f64, t: f64) -> Result<Self> {
        if !(lambda >= 0.0) {
            return Err(Error::OutOfRange {
                name: "lambda",
                value: lambda,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        let t = clamp_to_unit("t", t)?;
        Ok(Self {
            lambda,
            t,
            k: 0,
            prev: 0.0,
            cur: 1.0,
        })
    }
}

impl Iterator for UnitGegenbauer {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.cur;
        let next = match self.k {
            0 => self.t,
            k => {
                let kf = (k + 1) as f64;
                (2.0 * self.t * (kf + self.lambda - 1.0) * self.cur - (kf - 1.0) * self.prev)
                    / (kf + 2.0 * self.lambda - 1.0)
            }
        };
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn eigenvalues_match_closed_form() {
        assert_eq!(eigenvalue(2, 3), 12.0);
        assert_eq!(eigenvalue(2, 0), 0.0);
        assert_eq!(eigenvalue(3, 5), 35.0);
        // circle: k^2
        assert_eq!(eigenvalue(1, 7), 49.0);
    }

    #[test]
    fn eigenvalue_gaps() {
        for dim_n in 1..=6u32 {
            for k in 0..200usize {
                let gap = eigenvalue(dim_n, k + 1) - eigenvalue(dim_n, k);
                assert_eq!(gap, (2 * k) as f64 + dim_n as f64);
            }
        }
    }

    #[test]
    fn harmonic_dimensions_small_cases() {
        assert_eq!(harmonic_dimension(2, 0).unwrap(), 1);
        assert_eq!(harmonic_dimension(2, 3).unwrap(), 7);
        assert_eq!(harmonic_dimension(3, 2).unwrap(), 9);
        for k in 1..50 {
            assert_eq!(harmonic_dimension(1, k).unwrap(), 2);
        }
    }

    #[test]
    fn harmonic_dimension_matches_ratio_formula() {
        // (2k + N - 1) / (N - 1) * C(k + N - 2, k) for N >= 2
        for dim_n in 2..=6u32 {
            for k in 1..=60usize {
                let n = dim_n as u128;
                let k128 = k as u128;
                let expected =
                    (2 * k128 + n - 1) * binomial(k128 + n - 2, k128).unwrap() / (n - 1);
                assert_eq!(harmonic_dimension(dim_n, k).unwrap(), expected);
            }
        }
    }

    #[test]
    fn surface_areas_match_classical_values() {
        use std::f64::consts::PI;
        assert_relative_eq!(surface_area(0), 2.0, max_relative = 1e-15);
        assert_relative_eq!(surface_area(1), 2.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(surface_area(2), 4.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(surface_area(3), 2.0 * PI * PI, max_relative = 1e-15);
        // S^4: 8 pi^2 / 3
        assert_relative_eq!(surface_area(4), 8.0 * PI * PI / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn gegenbauer_legendre_case() {
        // lambda = 1/2 reproduces Legendre: P_2(x) = (3x^2 - 1)/2
        assert_abs_diff_eq!(
            gegenbauer(2, 0.5, 0.5).unwrap(),
            -0.125,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(gegenbauer(0, 0.5, -0.3).unwrap(), 1.0, epsilon = 0.0);
        assert_abs_diff_eq!(gegenbauer(1, 1.0, 0.25).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn gegenbauer_at_one_is_binomial() {
        for k in 0..=40usize {
            for &lambda in &[0.5, 1.0, 1.5, 2.0, 3.0] {
                let expected = cesaro_coefficient(k, 2.0 * lambda - 1.0).unwrap();
                assert_relative_eq!(
                    gegenbauer(k, lambda, 1.0).unwrap(),
                    expected,
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn gegenbauer_clamps_roundoff_but_rejects_junk() {
        let at_edge = gegenbauer(5, 0.5, 1.0).unwrap();
        let clamped = gegenbauer(5, 0.5, 1.0 + 1e-13).unwrap();
        assert_eq!(at_edge, clamped);
        assert!(gegenbauer(5, 0.5, 1.01).is_err());
        assert!(gegenbauer(5, 0.5, -1.2).is_err());
    }

    #[test]
    fn cesaro_coefficient_values() {
        assert_eq!(cesaro_coefficient(2, 1.0).unwrap(), 3.0);
        assert_eq!(cesaro_coefficient(0, 2.5).unwrap(), 1.0);
        for m in 0..200 {
            assert_eq!(cesaro_coefficient(m, 0.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn cesaro_coefficient_growth_rate() {
        // A_m^alpha ~ m^alpha / Gamma(alpha + 1); at alpha = 1/2,
        // Gamma(3/2) = sqrt(pi)/2.
        let alpha = 0.5;
        let m = 10_000usize;
        let a = cesaro_coefficient(m, alpha).unwrap();
        let predicted = (m as f64).powf(alpha) / (std::f64::consts::PI.sqrt() / 2.0);
        assert!((a / predicted - 1.0).abs() < 0.05, "a = {a}, predicted = {predicted}");
    }

    #[test]
    fn unit_gegenbauer_tracks_plain_ratio() {
        for &lambda in &[0.5f64, 1.0, 2.5] {
            for &t in &[-0.9, -0.2, 0.0, 0.37, 0.99, 1.0] {
                let ratios: Vec<f64> = UnitGegenbauer::new(lambda, t)
                    .unwrap()
                    .take(30)
                    .collect();
                for (k, r) in ratios.iter().enumerate() {
                    let expected = gegenbauer(k, lambda, t).unwrap()
                        / gegenbauer(k, lambda, 1.0).unwrap();
                    assert_abs_diff_eq!(*r, expected, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn unit_gegenbauer_circle_case_is_cosine() {
        let gamma = 0.7f64;
        let values: Vec<f64> = UnitGegenbauer::new(0.0, gamma.cos())
            .unwrap()
            .take(20)
            .collect();
        for (k, v) in values.iter().enumerate() {
            assert_abs_diff_eq!(*v, (k as f64 * gamma).cos(), epsilon = 1e-13);
        }
    }
}
