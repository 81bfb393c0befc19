use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field descriptor `{0}`")]
    InvalidField(String),

    #[error("{value} is not {expected}")]
    InvalidPrime { value: u64, expected: &'static str },

    #[error("ℓ equals the characteristic ({0}); out of scope")]
    EllIsCharacteristic(u64),

    #[error("{a} is not a unit modulo {n}")]
    NotCoprime { a: u64, n: u64 },

    #[error("valuation of zero is undefined")]
    ZeroValuation,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix does not preserve the fan: {0}")]
    NotFanPreserving(String),

    #[error("quadratic form is not definite")]
    NotDefinite,

    #[error("cap exceeded: {0}")]
    CapExceeded(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded(_) => 2,
            _ => 1,
        }
    }
}
