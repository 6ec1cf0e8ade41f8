use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("kind error: {0}")]
    Kind(String),
    #[error("capacity error: {0}")]
    Capacity(String),
    #[error("reducibility error: {0}")]
    Reducibility(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pattern error: {0}")]
    Pattern(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("verification failure: {0}")]
    Verification(String),
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) | Error::Consistency(_) => 1,
            Error::Capacity(_) | Error::Budget(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
