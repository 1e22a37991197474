use std::io;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unbounded polyhedron: {0}")]
    Unbounded(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("empty face: no vertex satisfies rows {0:?} with equality")]
    EmptyFace(Vec<usize>),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("incompatible instance: {0}")]
    Incompatible(String),
    #[error("cross-validation failed: {0}")]
    Validation(String),
    #[error("integer overflow in exact kernel")]
    Overflow,
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
