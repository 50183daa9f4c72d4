// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the numerical kernels and model layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimension {0} outside the supported range 1..=8")]
    DimensionOutOfRange(usize),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("singular matrix: pivot {pivot:.3e} below threshold {threshold:.3e}")]
    SingularMatrix { pivot: f64, threshold: f64 },

    #[error("{what} did not converge after {iterations} refinements (last change {last_change:.3e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        last_change: f64,
    },

    #[error("generator is not positive definite: minimum eigenvalue {min_eigenvalue:.6e} at t = {t}")]
    NotPositiveDefinite { t: f64, min_eigenvalue: f64 },

    #[error("generator is not Hermitian (asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("bad time window [{t_min}, {t_max}]")]
    BadWindow { t_min: f64, t_max: f64 },

    #[error("time {t} outside window [{t_min}, {t_max}]")]
    OutOfWindow { t: f64, t_min: f64, t_max: f64 },

    #[error("no sign change of f - mean found on the scan grid")]
    NoSignChange,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable variant name, used by the command line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DimensionOutOfRange(_) => "DimensionOutOfRange",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NonFinite(_) => "NonFinite",
            Error::SingularMatrix { .. } => "SingularMatrix",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::NotPositiveDefinite { .. } => "NotPositiveDefinite",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::BadWindow { .. } => "BadWindow",
            Error::OutOfWindow { .. } => "OutOfWindow",
            Error::NoSignChange => "NoSignChange",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
