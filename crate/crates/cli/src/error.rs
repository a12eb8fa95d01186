use thiserror::Error;

/// Exit status 2 covers everything that stops a command before it computes anything.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    /// The file parsed but does not describe a valid object.
    #[error("invalid input: {0}")]
    Build(sweedler::Error),
}

impl From<sweedler::Error> for CliError {
    fn from(e: sweedler::Error) -> Self {
        match e {
            sweedler::Error::UnknownName(n) => CliError::UnknownName(n),
            sweedler::Error::DegreeMismatch(m) => CliError::DegreeMismatch(m),
            other => CliError::Build(other),
        }
    }
}
