use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("{what} = {value} out of range {lo}..={hi}")]
    OutOfRange { what: &'static str, value: i64, lo: i64, hi: i64 },
    #[error("invalid witness g_{index}: {reason}")]
    InvalidWitness { index: usize, reason: String },
    #[error("ball too large: (2m)^radius = {estimate} exceeds cap {cap}")]
    BallTooLarge { estimate: u128, cap: u128 },
    #[error("search space too large: {size} assignments exceeds cap {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },
    #[error("dependent sub-basis")]
    DependentSubBasis,
    #[error("trivial image: the subgroup maps to the identity in the abelianization")]
    TrivialImage,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("arity mismatch: expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("inexact division")]
    InexactDivision,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::AmbientMismatch(msg.into())
    }

    pub(crate) fn json(msg: impl Into<String>) -> Self {
        Error::Json(msg.into())
    }

    /// Errors caused by a configured resource cap.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::BallTooLarge { .. } | Error::SearchSpaceTooLarge { .. })
    }
}
