use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("precision must be at least one digit")]
    BadPrecision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision exhausted")]
    PrecisionExhausted,
    #[error("value has negative valuation")]
    NegativeValuation,
    #[error("value is not a p-adic integer")]
    NotPAdicInteger,
    #[error("index out of range")]
    OutOfRange,
    #[error("argument is not a unit mod p")]
    NotAUnit,
    #[error("weight has an exact pole at k = {0}")]
    ExactPole(i64),
    #[error("prime has no representation by this form")]
    NoRepresentation,
    #[error("unsupported quadratic form")]
    UnsupportedForm,
    #[error("unknown statement id {0}")]
    UnknownStatement(String),
    #[error("{0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
