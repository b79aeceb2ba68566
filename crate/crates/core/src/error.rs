//! Error type shared by all library modules.

/// Errors produced by dictionary construction, solvers and scene generation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller-supplied argument violates a precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Every grid node is masked; no atom can be selected.
    #[error("dictionary exhausted: every grid node is masked")]
    ExhaustedDictionary,

    /// Rejection sampling could not place all targets under the
    /// separation constraint.
    #[error("scene generation infeasible: gave up after {attempts} rejection draws")]
    InfeasibleScene { attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
