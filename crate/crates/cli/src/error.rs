use thiserror::Error;

use crate::dsl::{ParseError, Pos};

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_DISCREPANCY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("{pos}: in `{name}`: {source}")]
    Eval {
        pos: Pos,
        name: String,
        #[source]
        source: ringlab_core::Error,
    },

    #[error("{pos}: expected {expected}, found {found}")]
    Type {
        pos: Pos,
        expected: String,
        found: String,
    },

    #[error("{0}")]
    Usage(String),

    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: ringlab_core::Error,
    },
}

fn core_code(e: &ringlab_core::Error) -> i32 {
    use ringlab_core::Error as E;
    match e {
        E::OrderCapExceeded { .. } | E::SearchBudgetExceeded { .. } => EXIT_LIMIT,
        E::Discrepancy(_) => EXIT_DISCREPANCY,
        _ => EXIT_INPUT,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Eval { source, .. } | CliError::Core { source, .. } => core_code(source),
            _ => EXIT_INPUT,
        }
    }

    pub fn core(context: impl Into<String>, source: ringlab_core::Error) -> Self {
        CliError::Core {
            context: context.into(),
            source,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
