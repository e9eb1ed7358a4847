use std::fmt;

use thiserror::Error;

/// One offending input field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldError {
    pub field: String,
    pub reason: String,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.reason)
    }
}

fn list(errors: &[FieldError]) -> String {
    errors.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {reason}")]
    Read { path: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation failed: {}", list(.0))]
    Validation(Vec<FieldError>),

    #[error(transparent)]
    Core(#[from] defring_core::Error),

    #[error("cannot write output: {0}")]
    Write(String),

    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Validation(vec![FieldError {
            field: field.into(),
            reason: reason.into(),
        }])
    }

    /// 1 for anything wrong with the input, 2 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Parse(_) | CliError::Validation(_) => 1,
            CliError::Core(_) | CliError::Write(_) | CliError::Failed(_) => 2,
        }
    }

    /// Field names of a validation failure, empty otherwise.
    pub fn fields(&self) -> Vec<&str> {
        match self {
            CliError::Validation(errs) => errs.iter().map(|e| e.field.as_str()).collect(),
            _ => Vec::new(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
