//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("cap exceeded: {what} needs {needed}, limit is {limit}")]
    CapExceeded {
        what: &'static str,
        needed: usize,
        limit: usize,
    },

    #[error("cannot identify a group of order {0} with the built-in fingerprint table")]
    UnsupportedOrder(usize),

    #[error("partitions do not form a grid: {0}")]
    NotAGrid(String),

    #[error("not a Latin square: {0}")]
    NotLatin(String),

    #[error("bad embedding: {0}")]
    BadEmbedding(String),

    #[error("map is not fixed-point-free")]
    NotFpf,

    #[error("internal witness construction failed verification: {0}")]
    InternalWitnessFailure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
