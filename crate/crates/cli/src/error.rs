//! Process-level error split. Configuration problems exit with code 2;
//! anything that fails once a run is underway (I/O included) exits with 3.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn failure(msg: impl Into<String>) -> Self {
        CliError::Failure(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Failure(_) => 3,
        }
    }
}

/// Core errors surfacing mid-run are runtime failures; configuration
/// validation maps them to [`CliError::Config`] explicitly where it runs
/// before any work starts.
impl From<fcomp_core::Error> for CliError {
    fn from(e: fcomp_core::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
