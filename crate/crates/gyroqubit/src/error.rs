//! Error types shared by every module.

use thiserror::Error;

/// Errors raised by ball, density-matrix, and matrix-cone operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A gyrogroup operation received a vector at or beyond the interior gate.
    #[error("vector norm {norm} is outside the open unit ball (interior limit {limit})")]
    BoundaryVector { norm: f64, limit: f64 },

    /// Scalar restricted addition requires both operands in (-1, 1).
    #[error("scalar {0} is outside the open interval (-1, 1)")]
    OutOfRange(f64),

    /// A matrix function needed a strictly positive eigenvalue and did not get one.
    #[error("eigenvalue {0} violates the positive-spectrum requirement")]
    NonPositiveSpectrum(f64),

    /// A congruence factor is numerically singular.
    #[error("congruence factor is singular (|det| = {0})")]
    SingularFactor(f64),

    /// A Bloch vector left the closed unit ball.
    #[error("Bloch vector norm {0} exceeds 1")]
    NormExceedsOne(f64),

    /// A matrix claimed as a density matrix does not have unit trace.
    #[error("matrix trace {0} is not 1")]
    NotTraceOne(f64),

    /// A matrix claimed as a state is not positive semidefinite.
    #[error("matrix is not positive semidefinite (min eigenvalue {0})")]
    NotPositive(f64),

    /// A cone operation received a matrix that is not positive definite.
    #[error("matrix is not positive definite (min eigenvalue {0})")]
    NotPositiveDefinite(f64),

    /// The verification harness was asked for a suite it does not know.
    #[error("unknown suite id {0:?}")]
    UnknownSuite(String),
}

impl Error {
    /// Stable machine-readable code for CLI error records.
    pub fn code(&self) -> &'static str {
        match self {
            Error::BoundaryVector { .. } => "boundary_vector",
            Error::OutOfRange(_) => "out_of_range",
            Error::NonPositiveSpectrum(_) => "non_positive_spectrum",
            Error::SingularFactor(_) => "singular_factor",
            Error::NormExceedsOne(_) => "norm_exceeds_one",
            Error::NotTraceOne(_) => "not_trace_one",
            Error::NotPositive(_) => "not_positive",
            Error::NotPositiveDefinite(_) => "not_positive_definite",
            Error::UnknownSuite(_) => "unknown_suite",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
