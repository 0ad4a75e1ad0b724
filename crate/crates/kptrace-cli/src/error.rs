use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes, one class per failure mode.
pub mod exit_code {
    pub const SUCCESS: i32 = 0;
    pub const IO: i32 = 2;
    pub const FORMAT: i32 = 3;
    pub const PRECONDITION: i32 = 4;
    /// The command ran to completion but produced no result (no SPA
    /// findings, no candidate verified).
    pub const NOTHING_FOUND: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("format error: {0}")]
    Format(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    NothingFound(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => exit_code::IO,
            CliError::Format(_) => exit_code::FORMAT,
            CliError::Precondition(_) => exit_code::PRECONDITION,
            CliError::NothingFound(_) => exit_code::NOTHING_FOUND,
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }

    pub fn precondition(msg: impl Into<String>) -> CliError {
        CliError::Precondition(msg.into())
    }
}

impl From<ladder_engine::LadderError> for CliError {
    fn from(e: ladder_engine::LadderError) -> CliError {
        CliError::Precondition(e.to_string())
    }
}

impl From<power_model::PowerError> for CliError {
    fn from(e: power_model::PowerError) -> CliError {
        CliError::Precondition(e.to_string())
    }
}

impl From<horizontal_attacks::AttackError> for CliError {
    fn from(e: horizontal_attacks::AttackError) -> CliError {
        CliError::Precondition(e.to_string())
    }
}

impl From<curve_core::CurveError> for CliError {
    fn from(e: curve_core::CurveError) -> CliError {
        CliError::Precondition(e.to_string())
    }
}
