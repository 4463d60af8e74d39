use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// Each variant maps onto one process exit code of the command-line tool
/// (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("resource guard exceeded: {0}")]
    Resource(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("solver error: {0}")]
    Solver(String),

    #[error("tolerance error: {0}")]
    Tolerance(String),

    #[error("unbounded polyhedron: {0}")]
    Unbounded(String),

    #[error("input error: {0}")]
    Input(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Exit code used by the `astab` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_) | Error::Unsupported(_) => 2,
            Error::Input(_) | Error::Dimension(_) | Error::Json(_) | Error::ContractViolation(_) => 3,
            Error::Resource(_) => 4,
            Error::Internal(_) | Error::Solver(_) | Error::Tolerance(_) | Error::Unbounded(_) => 5,
            Error::Io(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
