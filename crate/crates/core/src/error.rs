use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point is not in the feasible set: {0}")]
    Infeasible(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("numeric abort at t={t} (eta={eta:e}): {reason}")]
    NumericAbort { t: usize, eta: f64, reason: String },

    #[error("unknown problem `{0}`")]
    UnknownProblem(String),

    #[error("problem `{0}` has no registered duality-gap evaluator")]
    NoGapEvaluator(String),

    #[error("trace was recorded with record_every={0}; this needs record_every=1")]
    ThinnedTrace(usize),

    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
