use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("sample count {got} does not match grid node count {expected}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("malformed coefficient list: {0}")]
    Coefficients(String),

    #[error("radius {radius} is within {window:e} of critical radius {critical}")]
    NearCriticalRadius {
        radius: f64,
        critical: f64,
        window: f64,
    },

    #[error("matrix factorization failed: {0}")]
    Factorization(String),

    #[error("eigensolver did not converge: relative residual {residual:e}")]
    NonConvergence { residual: f64 },

    #[error("evaluation point {0} lies outside the disk")]
    OutsideDomain(f64),

    #[error("{0}")]
    Refused(String),
}

pub type Result<T> = std::result::Result<T, Error>;
