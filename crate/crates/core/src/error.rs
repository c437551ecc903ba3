use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported (p must be at least 3)")]
    CharacteristicTwo,
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("finite field p^{m} with p = {p} is too large")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient list {0:?} is not an element of the field")]
    BadCoefficients(Vec<u64>),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("exponent {num}/{den} of {var} needs root depth beyond the field's {depth}")]
    RootDepth { var: char, num: i64, den: i64, depth: u32 },
    #[error("exponent denominator {den} is not a power of p = {p}")]
    BadDenominator { den: i64, p: u64 },
    #[error("elements live in different fields: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{to} is not a purely inseparable extension of {from} in this model")]
    NotAnExtension { from: String, to: String },
    #[error("expected a form in the {expected} basis")]
    BasisMismatch { expected: &'static str },
    #[error("character is not ramified")]
    NotRamified,
    #[error("conductor guard violated: sw = {sw}, dt = {dt}")]
    GuardViolation { sw: u64, dt: u64 },
    #[error("curve restriction needs {needed} series terms, truncation is {truncation}")]
    TruncationOverflow { needed: usize, truncation: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

/// Coarse error classes; the CLI maps them to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Domain,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } => ErrorKind::Parse,
            _ => ErrorKind::Domain,
        }
    }
}
