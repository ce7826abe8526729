//! Error type shared by every fallible operation in the crate.

use thiserror::Error;

/// Failure modes for sphere construction, special-function evaluation,
/// quadrature, and norm computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A scalar argument fell outside its admissible interval.
    #[error("{name} = {value} outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// A degree index exceeded the table depth of the context it was used with.
    #[error("degree {degree} exceeds context maximum {max_degree}")]
    DegreeTooLarge { degree: usize, max_degree: usize },

    /// Exact integer tables (harmonic dimensions, binomials) overflowed 128 bits.
    #[error("dimension {dim_n} with degree {degree} overflows exact integer tables")]
    TableOverflow { dim_n: u32, degree: usize },

    /// The requested summation method needs a strictly positive truncation degree.
    #[error("truncation degree must be >= 1 for this summation method")]
    ZeroTruncation,

    /// Abel-summed kernels require a strictly positive smoothing exponent.
    #[error("smoothing exponent tau = {tau} must be positive")]
    NonPositiveTau { tau: f64 },

    /// An angle was queried against a bound regime that does not cover it.
    #[error("angle {gamma} lies outside the validity set of the requested bound regime")]
    RegimeDomain { gamma: f64 },

    /// A quadrature rule was asked to resolve more polynomial degree than it has.
    #[error("rule with {nodes} nodes resolves degree {capacity}, but degree {needed} was requested")]
    Underresolved {
        nodes: usize,
        capacity: usize,
        needed: usize,
    },

    /// Newton refinement of a quadrature node failed to settle.
    #[error("node {index} did not converge after {steps} Newton steps")]
    NodeDiverged { index: usize, steps: usize },

    /// Norms are implemented for p = 1, 2 and the sup norm only.
    #[error("unsupported Lebesgue exponent p = {p} (use 1, 2, or infinity)")]
    UnsupportedExponent { p: f64 },

    /// A grid failed validation (empty, unsorted, or out of domain).
    #[error("invalid {kind} grid: {reason}")]
    BadGrid {
        kind: &'static str,
        reason: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
