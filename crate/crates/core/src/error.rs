use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An invalid combination of numerical or quadrature settings.
    #[error("configuration error: {0}")]
    Config(String),
    /// Malformed polynomial input.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    /// Malformed parameter list.
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}
