use thiserror::Error;

/// Errors raised by the exact-arithmetic engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ambient Gr({r},{n}): need 1 <= r < n")]
    InvalidAmbient { r: usize, n: usize },

    #[error("ambient mismatch: Gr({0},{1}) vs Gr({2},{3})")]
    AmbientMismatch(usize, usize, usize, usize),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("partition {0} does not fit in the {1}x{2} box")]
    OutsideBox(String, usize, usize),

    #[error("parse error at offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    #[error("malformed bundle expression: {0}")]
    MalformedExpr(String),

    #[error("series is not in reduced form: {0}")]
    NotReduced(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_ambient(r: usize, n: usize) -> Result<()> {
    if r >= 1 && r < n {
        Ok(())
    } else {
        Err(Error::InvalidAmbient { r, n })
    }
}
