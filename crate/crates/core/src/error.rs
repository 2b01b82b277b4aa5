use thiserror::Error;

/// Errors raised when constructing or evaluating the model.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("dimension mismatch: expected {expected}, got {actual} ({what})")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("integration failed: {0}")]
    Integration(String),

    #[error("jacobian undefined: {0}")]
    JacobianUndefined(String),

    #[error("eigensolver did not converge within {0} iterations")]
    EigenNoConvergence(usize),

    #[error("combinatorial limit exceeded: n = {n} exceeds max_n = {max_n}")]
    CombinatorialLimit { n: usize, max_n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown network name `{0}`")]
    UnknownNetwork(String),

    #[error("fixed point absent: {0}")]
    FixedPointAbsent(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
