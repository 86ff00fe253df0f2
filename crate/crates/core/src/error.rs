use thiserror::Error;

/// Errors produced by grid construction, data ingestion, solving and model IO.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration: grids, weight schemes, solver settings.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Invalid data: dimension mismatches, non-positive inputs, malformed files.
    #[error("invalid data: {0}")]
    Data(String),

    /// A design-matrix entry evaluated to a non-finite value.
    #[error("design matrix entry at sample {row}, column {col} is not finite (exponent overflow)")]
    NonFiniteEntry { row: usize, col: usize },

    /// The closed-form univariate step hit a vanishing denominator. This cannot
    /// happen when the step preconditions hold; it guards against rounding.
    #[error(
        "univariate step: squared column norm does not exceed squared weight in the nonzero branch"
    )]
    DegenerateStep,

    /// A coordinate update produced a non-finite intermediate.
    #[error("non-finite value while updating coordinate {index}")]
    NonFiniteUpdate { index: usize },

    /// Model integrity violations: negative coefficients, duplicate terms.
    #[error("invalid model: {0}")]
    Model(String),

    #[error("model document: {0}")]
    ModelJson(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub(crate) fn model(msg: impl Into<String>) -> Self {
        Error::Model(msg.into())
    }
}
