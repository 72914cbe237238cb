use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("non-finite input in `{0}`")]
    NonFinite(&'static str),

    /// The unweighted value would leave the double-precision range; use the
    /// weighted evaluation instead.
    #[error("log-magnitude {log_magnitude:.3} exceeds the representable range; use weighted evaluation")]
    Overflow { log_magnitude: f64 },

    #[error("integrand has no Gaussian envelope and autoCutoff is on with no finite cutoff")]
    MissingEnvelope,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("integral diverges: {0}")]
    Divergent(String),

    /// Cancellation in an oscillatory integral exceeds double precision.
    #[error("value not resolvable in double precision: {0}")]
    Unresolved(String),
}

pub type Result<T> = std::result::Result<T, FockError>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> FockError {
    FockError::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

pub(crate) fn check_finite(name: &'static str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(FockError::NonFinite(name))
    }
}

pub(crate) fn check_positive(name: &'static str, x: f64) -> Result<f64> {
    check_finite(name, x)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(invalid(name, format!("must be > 0, got {x}")))
    }
}
