use thiserror::Error;

/// Failures raised by the numerical layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("regime error: c = {c} is not above the critical value {c_cr}; use the subcritical density")]
    Subcritical { c: f64, c_cr: f64 },

    #[error("no convergence in {what}: best estimate {best}, residual {residual:e}")]
    Convergence {
        what: &'static str,
        best: f64,
        residual: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
