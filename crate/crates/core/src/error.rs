use std::path::PathBuf;

use crate::model::CasimirResult;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter was outside its allowed range.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Grid refinement ran out before reaching the requested tolerance.
    #[error(
        "quadrature did not converge after {points} points per axis \
         (best value {value:e}, error estimate {error_estimate:e})"
    )]
    NotConverged {
        value: f64,
        error_estimate: f64,
        points: usize,
    },

    /// A Casimir evaluation whose quadrature did not converge. Carries the
    /// best available result.
    #[error(
        "Casimir energy did not converge (best e_cas {:e}, error estimate {:e})",
        .0.e_cas, .0.quad_error
    )]
    CasimirNotConverged(Box<CasimirResult>),

    /// Gamma function evaluated at a pole (a nonpositive integer).
    #[error("gamma function pole at {0}")]
    GammaPole(f64),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Serialization(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
