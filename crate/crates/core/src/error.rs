use thiserror::Error;

use crate::pattern::Mode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("pattern must contain at least one symbol")]
    EmptyPattern,
    #[error("pattern of {0} symbols is too long")]
    PatternTooLong(usize),
    #[error("bound k = {k} is not valid in {mode} mode")]
    InvalidBound { mode: Mode, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("unknown stream {0}")]
    UnknownStream(u64),
}
