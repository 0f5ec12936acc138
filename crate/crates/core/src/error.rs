use thiserror::Error;

/// Errors raised by the computational layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Stiefel index (n={n}, k={k}): need 1 <= k <= n-1")]
    Domain { n: u32, k: u32 },

    #[error("n={n} exceeds the supported maximum {max}")]
    TooLarge { n: u32, max: u32 },

    #[error("k={k} would enumerate 2^{k} basis elements; at most k={max} is supported")]
    TooManyAtoms { k: u32, max: u32 },

    #[error("element {element} is outside N_{{{n},{k}}} = {{{lo}, ..., {hi}}}")]
    ElementOutOfRange { element: u32, n: u32, k: u32, lo: u32, hi: u32 },

    #[error("sphere dimension must be >= 1, got {0}")]
    SphereDimension(i64),

    #[error("HS index must be >= 2, got {0}")]
    HsIndex(i64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
