use thiserror::Error;

/// Errors raised by the model layer.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the physical formula.
    #[error("domain error: {0}")]
    Domain(String),
    /// Input parsed but violates a physical invariant.
    #[error("validation error: {0}")]
    Validation(String),
    /// An operation was called with an incompatible configuration.
    #[error("usage error: {0}")]
    Usage(String),
    /// An iterative solver failed to converge.
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("parse error in {source_name}: {message}")]
    Parse { source_name: String, message: String },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive and finite, got {value}")))
    }
}
