//! File formats, checkpointing, parallel execution and the command line
//! for `pkw-core`.

pub mod checkpoint;
pub mod cli;
pub mod format;
pub mod manifest;
pub mod runner;

pub use pkw_core;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] pkw_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
    #[error("bad input: {0}")]
    Format(String),
    #[error("incomplete shard coverage: {0}")]
    IncompleteCoverage(String),
    #[error("duplicate shard: {0}")]
    DuplicateShard(String),
}

impl Error {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Core(pkw_core::Error::RetryExhausted(_)) => 3,
            Error::Core(pkw_core::Error::ConjectureWitness { .. }) => 5,
            Error::Core(_) | Error::InvalidArgs(_) => 2,
            Error::IncompleteCoverage(_) | Error::DuplicateShard(_) => 4,
            Error::Io(_) | Error::Json(_) | Error::Csv(_) | Error::Format(_) => 1,
        }
    }
}
