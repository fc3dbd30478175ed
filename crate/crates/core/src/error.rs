use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A value violates an operation's input contract (bad label, edge not in
    /// the tree, parameter out of range, malformed structure).
    #[error("invalid input: {0}")]
    Input(String),
    /// The operation is not defined for this vertex count.
    #[error("domain error: {0}")]
    Domain(String),
    /// Two trees on different vertex sets were compared.
    #[error("vertex count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    /// Text input could not be parsed.
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// An exhaustive enumeration was requested above its configured cap.
    #[error("{what} at n={n} exceeds the enumeration cap n<={cap}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },
    /// A run could not be carried out (thread pool, allocation, overflow).
    #[error("resource failure: {0}")]
    Resource(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}
