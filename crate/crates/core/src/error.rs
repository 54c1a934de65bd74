use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("{what} = {value} is outside the supported range (limit {limit})")]
    OutOfRange { what: &'static str, value: String, limit: String },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no stable second-order coefficient: {0}")]
    NonConvergence(String),

    #[error("family is empty after certification filtering")]
    EmptyFamily,

    #[error("regime violation: {0}")]
    RegimeViolation(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("configuration error in field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config { field: field.into(), reason: reason.into() }
    }

    /// Process exit status the CLI reports for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } => 2,
            _ => 3,
        }
    }
}
