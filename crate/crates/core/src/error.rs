use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// A computed value contradicts a structural invariant. Always a bug or a
    /// counterexample, never bad user input.
    #[error("invariant breach: {0}")]
    InvariantBreach(String),
}

impl Error {
    pub fn is_invariant_breach(&self) -> bool {
        matches!(self, Error::InvariantBreach(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
