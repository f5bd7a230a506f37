//! Front end: configuration, report rendering and the subcommands.

pub mod commands;
pub mod config;
pub mod driver;
pub mod report;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Sieve(#[from] xdio_sieves::SieveError),
    #[error(transparent)]
    Bounds(#[from] xdio_bounds::BoundsError),
    #[error(transparent)]
    Oracle(#[from] xdio_oracle::OracleError),
    #[error(transparent)]
    Euclid(#[from] xdio_polyeuclid::EuclidError),
}

impl CliError {
    /// 2 for usage errors, 4 for everything else that stops a run.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 4,
        }
    }
}
