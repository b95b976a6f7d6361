use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("x = {x} is not strictly inside the support ({lower}, {upper})")]
    OutsideSupport { x: f64, lower: f64, upper: f64 },
    #[error("weight derivative is discontinuous at x = 0 for {0}")]
    Discontinuity(String),
    #[error("integral diverges: {0}")]
    Divergent(String),
    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("unsupported family: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("non-finite value {value} at node x = {x}")]
    NonFinite { x: f64, value: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by bad input rather than by a numerical failure.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::ParameterOutOfRange(_)
                | Error::OutsideSupport { .. }
                | Error::IndexOutOfRange(_)
                | Error::Unsupported(_)
                | Error::InvalidArgument(_)
                | Error::LengthMismatch { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
