use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("zero polynomial has no multidegree")]
    ZeroPolynomial,
    #[error("polynomial is not multihomogeneous: {0}")]
    Inhomogeneous(String),
    #[error("operands live over different rings")]
    RingMismatch,
    #[error("invalid ring specification: {0}")]
    InvalidRing(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("bracket closure failed: {0}")]
    BracketClosure(String),
    #[error("unipotent kernel validation failed: {0}")]
    NilpotencyCheck(String),
    #[error("could not identify Levi factor: {0}")]
    LeviUnidentified(String),
    #[error("invalid group expression: {0}")]
    InvalidGroupExpr(String),
    #[error("unknown model case `{0}`")]
    UnknownCase(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("not a quadratic form: {0}")]
    NotQuadratic(String),
    #[error("database line {line}: {msg}")]
    Database { line: usize, msg: String },
    #[error("unknown family {0}")]
    UnknownFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
