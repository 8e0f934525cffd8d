use thiserror::Error;

use crate::dts::Verdict;
use crate::packing::PackingVerdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DtsError {
    #[error("invalid difference triangle set: {0}")]
    InvalidSet(Verdict),
    #[error("invalid difference packing: {0}")]
    InvalidPacking(PackingVerdict),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("arithmetic failure: {0}")]
    Arithmetic(String),
}

impl DtsError {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        DtsError::Precondition(msg.into())
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        DtsError::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = DtsError> = std::result::Result<T, E>;
