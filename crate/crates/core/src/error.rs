use num_bigint::BigUint;
use thiserror::Error;

/// Errors raised by the library. Every variant maps onto one of the
/// stable CLI exit codes through [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{what} = {value} is out of range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("dimension or characteristic mismatch: {0}")]
    Mismatch(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("{what} cap exceeded: {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },

    #[error("group order {order} exceeds element cap {cap}")]
    ElementCap { cap: usize, order: BigUint },

    #[error("base search exceeded {cap} nodes")]
    SearchCap { cap: u64 },

    #[error("minimal degree is undefined for the trivial group")]
    TrivialGroup,

    #[error("numeric breakdown: {0}")]
    Numeric(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code: 2 bad input, 3 resource cap, 4 verification failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } | Error::ElementCap { .. } | Error::SearchCap { .. } => 3,
            Error::Verification(_) => 4,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
