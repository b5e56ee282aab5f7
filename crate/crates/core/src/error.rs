use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("curve needs at least two distinct vertices, got {0}")]
    DegenerateCurve(usize),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite coordinate in point")]
    NonFinite,

    #[error("index error: {0}")]
    Index(String),

    #[error("bad predicate indices: {0}")]
    BadIndices(String),

    #[error("invalid valid-sequence: {0}")]
    InvalidSequence(String),

    #[error("radius {0} is not feasible for this pair")]
    Infeasible(f64),

    #[error("instance exceeds enumeration cap: {0}")]
    CapExceeded(String),

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("certification failed after {attempts} attempts (max expansion {max_expansion}, max contraction {max_contraction})")]
    RetriesExhausted {
        attempts: usize,
        max_expansion: f64,
        max_contraction: f64,
    },

    #[error("need at least {k} curves, got {n}")]
    TooFewCurves { k: usize, n: usize },

    #[error("exhaustive search over {0} candidate subsets exceeds budget")]
    CandidateBudgetExceeded(u128),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
