use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count mismatch: {0} vs {1}")]
    QubitMismatch(usize, usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("{what} exceeds limit ({size} > {limit})")]
    Limit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("operator is not normal (defect {0:.3e})")]
    NonNormal(f64),

    #[error("operator is not Hermitian")]
    NonHermitian,

    #[error("power iteration did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("empty feasible set")]
    EmptyFeasibleSet,

    #[error("zero denominator in {0}")]
    ZeroDenominator(&'static str),

    #[error("{formula} is not applicable: {reason}")]
    NotApplicable {
        formula: &'static str,
        reason: String,
    },

    #[error("missing ingredient `{0}`")]
    MissingIngredient(&'static str),

    #[error("no route to compute the commutator norm: {0}")]
    NoRoute(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
