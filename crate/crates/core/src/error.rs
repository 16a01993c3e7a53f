use thiserror::Error;

use crate::state::BasisLabel;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("basis mismatch: cannot map {from:?} to {to:?}")]
    BasisMismatch { from: BasisLabel, to: BasisLabel },

    #[error("degenerate state: {0}")]
    DegenerateState(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
