use thiserror::Error;

/// Errors produced by the exact pipeline.
///
/// Every failure is structural (bad dimensions, degenerate input, parse
/// problems); there are no numerical-tolerance failures because there is no
/// floating point anywhere.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid vertex set: {0}")]
    InvalidVertexSet(String),

    #[error("malformed linear program: {0}")]
    MalformedProgram(String),

    #[error("permutation is not a symmetry: {0}")]
    NotASymmetry(String),

    #[error("group action left the item set: {0}")]
    ActionNotClosed(String),

    #[error("unknown solid: {0}")]
    UnknownSolid(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
