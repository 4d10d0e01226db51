use thiserror::Error;

#[derive(Debug, Error)]
pub enum VneError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("{solver}: {reason}")]
    Unsupported {
        solver: &'static str,
        reason: String,
    },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid source problem: {0}")]
    InvalidSource(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("witness does not meet the artifact criterion: {0}")]
    CriterionNotMet(String),

    #[error("missing theta: {0}")]
    MissingTheta(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, VneError>;

pub(crate) fn unsupported(solver: &'static str, reason: impl Into<String>) -> VneError {
    VneError::Unsupported {
        solver,
        reason: reason.into(),
    }
}
