use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not convergent: {0}")]
    NotConvergent(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("mixed weights in combination: {0:?}")]
    MixedWeight(Vec<usize>),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("precision {0} exceeds the supported ceiling")]
    Precision(u32),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
