use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("horizon t={t} exceeds the enumeration cap of {cap}")]
    HorizonTooLarge { t: usize, cap: usize },

    #[error("requested work of {requested} cells exceeds the limit of {limit}")]
    ResourceLimit { requested: u128, limit: u128 },

    #[error("empty sample")]
    EmptySample,

    #[error("operation requires a full-path batch")]
    FinalsOnlyBatch,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
