use thiserror::Error;

/// Failure categories shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in different algebras, or a generator is unknown.
    #[error("structure error: {0}")]
    Structure(String),
    /// Malformed input data (non-positive action, zero unit, bad name, ...).
    #[error("validation error: {0}")]
    Validation(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The action filtration is violated, or a consequence of it failed to hold.
    #[error("filtration error: {0}")]
    Filtration(String),
    #[error("empty ideal: every generator is zero")]
    EmptyIdeal,
    #[error("certificate error: {0}")]
    Certificate(String),
    /// A postcondition that holds for all valid inputs failed.
    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Outcome of a search that is only complete up to an explicit cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bounded<T> {
    Found(T),
    UnknownAtCap { cap: u64 },
}

impl<T> Bounded<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Bounded::Found(t) => Some(t),
            Bounded::UnknownAtCap { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Bounded::Found(_))
    }
}
