use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("lattice is not contained in the other lattice")]
    NotContained,
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("integer overflow during exact computation")]
    Overflow,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::Invalid(_)
            | Error::Domain(_)
            | Error::Dimension { .. }
            | Error::NotContained => 2,
            Error::Resource(_) | Error::Overflow => 3,
            Error::Invariant(_) => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
