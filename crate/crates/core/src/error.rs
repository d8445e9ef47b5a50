use thiserror::Error;

/// Errors raised while loading or solving an instance.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid network: {0}")]
    Network(String),
    #[error("invalid food web: {0}")]
    FoodWeb(String),
    #[error("invalid tree extension: {0}")]
    Extension(String),
    #[error("invalid instance: {0}")]
    Instance(String),
    /// The request is well formed but cannot be carried out with the chosen
    /// configuration (for example a deterministic hash family that is too large).
    #[error("infeasible configuration: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
