use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported algebra type: {0}")]
    UnsupportedType(String),
    #[error("invalid Lie algebra data: {0}")]
    InvalidAlgebra(String),
    #[error("invalid nilpotent data: {0}")]
    InvalidNilpotent(String),
    #[error("basis is not homogeneous for ad x: {0}")]
    NotHomogeneous(String),
    #[error("invalid element y: {0}")]
    InvalidY(String),
    #[error("condition (F) does not hold: {0}")]
    ConditionF(String),
    #[error("unknown generator: {0}")]
    UnknownGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not indecomposable: {0}")]
    NotIndecomposable(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("degenerate pairing: {0}")]
    Degenerate(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
