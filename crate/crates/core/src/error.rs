use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid switching: {0}")]
    InvalidSpec(String),
    #[error("degenerate switching: {0}")]
    DegenerateSpec(String),
    #[error("instance too large: {0}")]
    Size(String),
    #[error("repair failed: {0}")]
    RepairFailed(String),
    #[error("colour selection failed: {0}")]
    SelectionFailed(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("no starting Hamilton cycle: {0}")]
    NoStart(String),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
