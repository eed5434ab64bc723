use thiserror::Error;

/// Failures raised by the geometry and verification layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("abscissa {t} lies outside the projection [{lo}, {hi}]")]
    OutOfRange { t: f64, lo: f64, hi: f64 },

    #[error("argument outside the admissible domain: {0}")]
    Domain(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("check skipped: {0}")]
    SkippedDegenerate(String),

    #[error("cannot read polygon: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
