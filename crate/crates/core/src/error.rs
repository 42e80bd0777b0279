use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("basis rows are linearly dependent")]
    DependentBasis,

    #[error("index {index} out of range for length {len}")]
    OutOfRange { index: usize, len: usize },

    #[error("group elements belong to different groups")]
    GroupMismatch,

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid group parameters: {0}")]
    InvalidParams(String),

    #[error("permutation is not an automorphism of the code")]
    NotAutomorphism,

    #[error("permutation has no uniform cycle type")]
    NoCycleType,

    #[error("cycle length {0} is even; the decomposition needs odd cycle length")]
    EvenCycleLength(usize),

    #[error("inner code is not a subcode of the outer code (inner row {row})")]
    SubcodeViolation { row: usize },

    #[error("code operation underflow: {0}")]
    Underflow(String),

    #[error("dimension {k} exceeds the exhaustive-enumeration guard of {max}")]
    DimensionGuard { k: usize, max: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("best-known table entry ({n},{k},{d}) is invalid: {msg}")]
    InvalidTableEntry { n: usize, k: usize, d: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
