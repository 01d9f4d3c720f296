use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("basis mismatch: {left} vs {right}")]
    BasisMismatch { left: String, right: String },

    #[error("precision mismatch: {left} vs {right}")]
    PrecisionMismatch { left: i64, right: i64 },

    #[error("precision {r} is outside the range available for basis {basis}")]
    PrecisionOutOfRange { r: i64, basis: String },

    #[error("digit {digit} at index {index} is outside [0, {radix})")]
    DigitOutOfRange { index: i64, digit: u64, radix: u64 },

    #[error("polynomial has no coefficients")]
    EmptyPolynomial,

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("{what} = {value} exceeds the configured budget of {limit}")]
    BudgetExceeded { what: &'static str, value: String, limit: u64 },

    #[error("empty summation range: {0}")]
    EmptyRange(String),

    #[error("{field}: {message}")]
    Invalid { field: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Invalid { field: field.into(), message: message.into() }
    }

    pub(crate) fn budget(what: &'static str, value: impl ToString, limit: u64) -> Self {
        Error::BudgetExceeded { what, value: value.to_string(), limit }
    }
}
