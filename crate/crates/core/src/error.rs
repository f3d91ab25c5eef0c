use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not an oriented circle diagram: {0}")]
    NotOriented(String),
    #[error("non-compact input: {0}")]
    NonCompact(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("truncation insufficient: {0}")]
    Truncation(String),
    #[error("structural assumption failed: {0}")]
    StructuralAssumption(String),
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("internal convention error: {0}")]
    Convention(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
