//! Command implementations behind the `wpt` binary.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 placement
//! constraint violation, 3 reproduction mismatch.

pub mod commands;
pub mod config;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Constraint(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Constraint(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl From<wpt_core::Error> for CliError {
    fn from(e: wpt_core::Error) -> Self {
        match e {
            wpt_core::Error::Infeasible { .. } => CliError::Constraint(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}
