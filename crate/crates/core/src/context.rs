//! Precomputed per-sphere tables: eigenvalues, harmonic dimensions, surface
//! areas, and the zonal normalization constants used by every kernel and
//! synthesis routine.

use crate::error::{Error, Result};
use crate::special::{self, UnitGegenbauer};

/// The unit sphere S^N in R^(N+1) together with tables up to a fixed
/// harmonic degree.
///
/// The zonal harmonic of degree k evaluated at angular distance gamma is
/// `zonal_scale(k) * R_k(cos gamma)`, where R_k is the unit-normalized
/// Gegenbauer value of order (N - 1) / 2 produced by [`Self::unit_zonal`]
/// and `zonal_scale(k) = d_k / omega_N` is the value at gamma = 0.
#[derive(Debug, Clone)]
pub struct SphereContext {
    dim_n: u32,
    max_degree: usize,
    lambda: Vec<f64>,
    dims: Vec<f64>,
    zonal_scale: Vec<f64>,
    omega: f64,
    omega_equator: f64,
}

impl SphereContext {
    /// Build tables for S^`dim_n` with harmonic degrees 0..=`max_degree`.
    pub fn new(dim_n: u32, max_degree: usize) -> Result<Self> {
        if dim_n < 1 {
            return Err(Error::OutOfRange {
                name: "dim_n",
                value: dim_n as f64,
                lo: 1.0,
                hi: f64::INFINITY,
            });
        }
        let omega = special::surface_area(dim_n);
        let omega_equator = special::surface_area(dim_n - 1);
        let mut lambda = Vec::with_capacity(max_degree + 1);
        let mut dims = Vec::with_capacity(max_degree + 1);
        let mut zonal_scale = Vec::with_capacity(max_degree + 1);
        for k in 0..=max_degree {
            lambda.push(special::eigenvalue(dim_n, k));
            let d = special::harmonic_dimension(dim_n, k)? as f64;
            dims.push(d);
            zonal_scale.push(d / omega);
        }
        Ok(Self {
            dim_n,
            max_degree,
            lambda,
            dims,
            zonal_scale,
            omega,
            omega_equator,
        })
    }

    pub fn dim_n(&self) -> u32 {
        self.dim_n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Gegenbauer order (N - 1) / 2 of the zonal profile; 0 on the circle,
    /// where the profile degenerates to cos(k gamma).
    pub fn zonal_order(&self) -> f64 {
        (self.dim_n as f64 - 1.0) / 2.0
    }

    pub fn check_degree(&self, k: usize) -> Result<()> {
        if k > self.max_degree {
            Err(Error::DegreeTooLarge {
                degree: k,
                max_degree: self.max_degree,
            })
        } else {
            Ok(())
        }
    }

    /// Laplace-Beltrami eigenvalue k (k + N - 1).
    pub fn eigenvalue(&self, k: usize) -> f64 {
        self.lambda[k]
    }

    /// Eigenvalue of the shifted operator (Laplace-Beltrami plus identity),
    /// strictly positive, used for fractional powers.
    pub fn shifted_eigenvalue(&self, k: usize) -> f64 {
        self.lambda[k] + 1.0
    }

    pub fn harmonic_dimension(&self, k: usize) -> f64 {
        self.dims[k]
    }

    /// Value of the degree-k zonal harmonic at angular distance 0,
    /// d_k / omega_N.
    pub fn zonal_scale(&self, k: usize) -> f64 {
        self.zonal_scale[k]
    }

    /// Surface area of S^N.
    pub fn surface_area(&self) -> f64 {
        self.omega
    }

    /// Surface area of the equatorial sphere S^(N-1); the factor that
    /// reduces integrals of zonal functions to one dimension.
    pub fn equator_area(&self) -> f64 {
        self.omega_equator
    }

    /// Unit-normalized zonal profile values R_k(t) for k = 0, 1, 2, ...
    /// at fixed t = cos gamma.
    pub fn unit_zonal(&self, t: f64) -> Result<UnitGegenbauer> {
        UnitGegenbauer::new(self.zonal_order(), t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn two_sphere_tables() {
        let ctx = SphereContext::new(2, 16).unwrap();
        for k in 0..=16 {
            assert_eq!(ctx.eigenvalue(k), (k * (k + 1)) as f64);
            assert_eq!(ctx.harmonic_dimension(k), (2 * k + 1) as f64);
            assert_relative_eq!(
                ctx.zonal_scale(k),
                (2 * k + 1) as f64 / (4.0 * std::f64::consts::PI),
                max_relative = 1e-15
            );
        }
        assert_relative_eq!(
            ctx.equator_area(),
            2.0 * std::f64::consts::PI,
            max_relative = 1e-15
        );
    }

    #[test]
    fn circle_tables() {
        let ctx = SphereContext::new(1, 8).unwrap();
        assert_eq!(ctx.harmonic_dimension(0), 1.0);
        for k in 1..=8 {
            assert_eq!(ctx.harmonic_dimension(k), 2.0);
        }
        assert_eq!(ctx.equator_area(), 2.0);
        assert_eq!(ctx.zonal_order(), 0.0);
    }

    #[test]
    fn rejects_dimension_zero_and_deep_degrees() {
        assert!(SphereContext::new(0, 4).is_err());
        let ctx = SphereContext::new(2, 4).unwrap();
        assert!(ctx.check_degree(4).is_ok());
        assert!(ctx.check_degree(5).is_err());
    }

    #[test]
    fn shifted_spectrum_is_positive() {
        let ctx = SphereContext::new(3, 64).unwrap();
        for k in 0..=64 {
            assert!(ctx.shifted_eigenvalue(k) >= 1.0);
            assert_eq!(ctx.shifted_eigenvalue(k), ctx.eigenvalue(k) + 1.0);
        }
    }
}
