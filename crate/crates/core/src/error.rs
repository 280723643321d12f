use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: l+3d-1={lhs}, n+Σr={rhs}")]
    DimensionMismatch { lhs: i64, rhs: i64 },
    #[error("degree must be at least 1, got {0}")]
    InvalidDegree(i64),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("outside the enumeration budget: {0}")]
    Budget(String),
    #[error("random configurations kept disagreeing for {query} after {attempts} attempts")]
    SeedDisagreement { query: String, attempts: u32 },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("cache file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
