use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(
        "precision loss at {bits} bits: orthogonality residual {residual:e} exceeds {limit:e}; raise precision_bits"
    )]
    PrecisionLoss { bits: u32, residual: f64, limit: f64 },
    #[error("eigenvalue iteration did not converge for degree {0}")]
    Eigen(u32),
    #[error(transparent)]
    Core(#[from] dlop_core::Error),
}

pub type Result<T> = std::result::Result<T, OracleError>;
