use thiserror::Error;

/// Error type shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Simulated recursion produced a non-finite value. Indices `<= 0`
    /// refer to burn-in or the carried initial values.
    #[error("generation failed: non-finite value at series index {index}")]
    NonFiniteGeneration { index: i64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("series too short: need at least {needed} values, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("singular matrix {name}: smallest eigenvalue {min_eigenvalue:.3e}")]
    SingularMatrix {
        name: &'static str,
        min_eigenvalue: f64,
    },

    /// Inner multiplier solve did not converge; `block` is 1 for the
    /// pre-split block and 2 for the post-split block.
    #[error("inner solve failed to converge on block {block} after {iterations} iterations")]
    InnerSolve { block: u8, iterations: usize },

    #[error("no usable split at k = {k}: {reason}")]
    NoUsableSplit { k: usize, reason: String },

    #[error("no split in the trimmed range could be evaluated: {0}")]
    AllSplitsFailed(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
