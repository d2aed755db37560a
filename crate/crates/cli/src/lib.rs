//! Command implementations behind the `semifree` binary.
//!
//! Every command returns a [`Report`]: the text for stdout and an exit code.
//! Exit codes: 0 success, 1 refuted (e.g. an invalid presentation),
//! 2 parse or usage error, 3 precondition failure, 4 internal assertion,
//! 10 unknown at the given cap.

pub mod commands;
pub mod document;
pub mod fixtures;

use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const EXIT_UNKNOWN_AT_CAP: i32 = 10;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] semifree::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use semifree::Error as E;
        match self {
            CliError::Io(_) | CliError::Parse(_) => EXIT_PARSE,
            CliError::Core(e) => match e {
                E::Parse(_) | E::Structure(_) | E::Validation(_) => EXIT_PARSE,
                E::InternalAssertion(_) => EXIT_INTERNAL,
                E::Precondition(_)
                | E::Filtration(_)
                | E::EmptyIdeal
                | E::EmptyInput(_)
                | E::Certificate(_) => EXIT_PRECONDITION,
            },
        }
    }
}

/// Output of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub code: i32,
}

impl Report {
    pub fn ok(text: String) -> Report {
        Report { text, code: EXIT_OK }
    }
}
