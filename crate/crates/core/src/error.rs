use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("graph disconnected")]
    Disconnected,
    #[error("no candidates")]
    NoCandidates,
    #[error("empty bit string")]
    EmptyBitString,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed density expression: {0}")]
    Density(String),
}

pub type Result<T> = std::result::Result<T, Error>;
