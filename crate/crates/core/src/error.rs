use thiserror::Error;

/// Failure class, used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Guard,
    Numeric,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("symbol {symbol} out of range for alphabet of size {size}")]
    SymbolOutOfRange { symbol: usize, size: usize },
    #[error("{what}: needs {needed}, limit is {limit}")]
    GuardExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("index overflow: {0}")]
    Overflow(String),
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error("invalid distribution: {0}")]
    InvalidDist(String),
    #[error("invalid codebook: {0}")]
    InvalidCodebook(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("hypergraph is not upward closed")]
    NotUpwardClosed,
    #[error("parts do not form a partition: {0}")]
    NotAPartition(String),
    #[error("codebook is not a zero-error list code for L = {0}")]
    NotZeroError(usize),
    #[error("threshold unreachable: {0}")]
    Unreachable(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn guard(what: &'static str, needed: u128, limit: u128) -> Self {
        Error::GuardExceeded {
            what,
            needed,
            limit,
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::GuardExceeded { .. } | Error::Overflow(_) => ErrorClass::Guard,
            Error::Numeric(_) | Error::Unreachable(_) => ErrorClass::Numeric,
            _ => ErrorClass::Parse,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
