use thiserror::Error;

/// Errors raised by the spectral, wavefunction and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no bound states: {0}")]
    NoBoundStates(String),

    #[error("series failed to converge: {0}")]
    NonConvergence(String),

    #[error("finite-difference grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("finite-difference box too small: {0}")]
    BoxTooSmall(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
