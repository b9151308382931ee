use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {0} is outside the ground set of size {1}")]
    ElementOutOfRange(usize, usize),
    #[error("ground set of {0} elements exceeds the supported maximum of {max}", max = crate::ElemSet::CAPACITY)]
    TooManyElements(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("set is not a flat of the matroid")]
    NotAFlat,
    #[error("basepoint {0} is a loop or a coloop")]
    BadBasepoint(usize),
    #[error("scalar domains do not match")]
    DomainMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("search exceeded its budget of {0} nodes")]
    SearchLimit(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}:{line}: {message}")]
    ParseAt {
        path: String,
        line: usize,
        message: String,
    },
    #[error("cannot serialize: {0}")]
    Unserializable(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
