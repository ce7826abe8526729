//! Numerical harmonic analysis on the unit N-sphere.
//!
//! The crate builds Fourier-Laplace expansions of zonal functions on S^N and
//! studies how their summation methods behave: spherical harmonic kernels
//! (partial-sum, Riesz, Cesaro, and Abel-summed Riesz means), smoothness
//! norms with fractional powers of the shifted Laplace-Beltrami operator,
//! Gauss-Legendre quadrature tuned to sphere reductions, and the maximal
//! operators whose bounds govern almost-everywhere convergence at the
//! critical smoothness index (N - 1) / 2.
//!
//! Everything is zonal (rotation-invariant about a pole), which reduces all
//! sphere integrals to one- and two-dimensional quadrature and keeps
//! experiments at interactive scale.

pub mod context;
pub mod error;
pub mod kernels;
pub mod maximal;
pub mod quadrature;
pub mod rng;
pub mod special;
pub mod spectral;

pub use context::SphereContext;
pub use error::{Error, Result};
pub use quadrature::QuadratureRule;
