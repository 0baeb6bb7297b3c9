//! Harness library behind the `wyd` binary: instance file format,
//! seeded generation, the verification battery, beta sweeps and
//! measure dumps.

use thiserror::Error;

pub mod config;
pub mod dump;
pub mod generate;
pub mod instance;
pub mod sweep;
pub mod verify;

/// Exit code 2 material: bad input, bad config, or I/O trouble.
/// Violations found during a run are not errors; they set exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}
