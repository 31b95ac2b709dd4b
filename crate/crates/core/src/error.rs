use thiserror::Error;

use crate::arrangement::Arrangement;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a bijection onto 1..={volume}: {reason}")]
    NotBijection { volume: usize, reason: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("construction invariant violated: {0}")]
    ConstructionInvariant(String),

    /// The node ceiling was hit before the search finished. `best` holds the
    /// incumbent (an upper bound on the optimum), if one was found.
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded {
        budget: u64,
        best: Option<Box<Arrangement>>,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
