use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("resource limit: {what} needs {needed} items, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        needed: String,
        cap: u64,
    },
    #[error("invalid field order {0}: must be a prime power in [2, 2^20]")]
    InvalidField(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a coatom of the interval")]
    InvalidCoatom,
    #[error("invalid interval: lower element is not below upper element")]
    InvalidInterval,
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("code is degenerate")]
    DegenerateCode,
    #[error("scaling mismatch: {0}")]
    ScalingMismatch(String),
    #[error("weight function is not monotone: {0}")]
    NotMonotone(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn limit(what: &'static str, needed: impl ToString, cap: u64) -> Self {
        Error::ResourceLimit {
            what,
            needed: needed.to_string(),
            cap,
        }
    }
}
