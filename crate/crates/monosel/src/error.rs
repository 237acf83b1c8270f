use thiserror::Error;

/// Exit code for a passing run.
pub const EXIT_PASS: i32 = 0;
/// Exit code for a failed check or invariant violation.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for invalid input, including module precondition errors.
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid scenario: {0}")]
    Schema(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] monosel_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_INVALID
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
