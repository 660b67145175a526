//! Error type shared across the crate.

use thiserror::Error;

/// Errors surfaced by solver, sampling, and experiment operations.
#[derive(Debug, Error)]
pub enum Error {
    /// The exponent matrix has determinant zero.
    #[error("exponent matrix is singular (determinant is zero)")]
    SingularMatrix,

    /// A log-sign value was requested for zero, which has no logarithm.
    #[error("zero cannot be represented in log-sign form")]
    ZeroValue,

    /// A log-sign value was requested for a NaN or infinite input.
    #[error("non-finite value cannot be represented in log-sign form")]
    NonFinite,

    /// An even-order root of a negative number was requested.
    #[error("even-order root of a negative value has no real solution")]
    NegativeEvenRoot,

    /// The system has no root with all coordinates real and nonzero.
    #[error("system has no real root")]
    NoRealRoot,

    /// An orthant selection conflicts with the exponent parities.
    #[error("orthant choice is inconsistent with exponent parities: {0}")]
    InvalidOrthant(String),

    /// Certification kept failing after exhausting precision escalation.
    #[error("root certification failed after {attempts} precision escalations")]
    CertificationFailed { attempts: u32 },

    /// Brute-force enumeration was requested above the supported dimension.
    #[error("dimension {n} exceeds the enumeration limit {limit}")]
    DimensionTooLarge { n: usize, limit: usize },

    /// A zero-sum weight vector was required but the weights do not sum to zero.
    #[error("weight vector must sum to zero (sum = {0})")]
    WeightSumNonzero(f64),

    /// The scale parameter is below the admissible floor e^2.
    #[error("scale parameter {0} is below the admissible floor e^2")]
    ScaleTooSmall(f64),

    /// Malformed numeric or structural input.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
