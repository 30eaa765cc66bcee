use hopfmi::AlgebraError;
use thiserror::Error;

/// Errors surfaced by the command-line front end. All of them map to exit
/// status 2; verification failures are not errors and map to exit status 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("sort error: {0}")]
    Sort(String),

    #[error("alphabet error: {0}")]
    Alphabet(String),

    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
