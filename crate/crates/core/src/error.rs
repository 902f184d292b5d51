use thiserror::Error;

/// Errors raised by the combinatorial and weight-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root datum: {0}")]
    UnsupportedFamily(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("weight is not integral: {0}")]
    NonIntegral(String),

    #[error("root {0} is even, an odd root is required")]
    EvenRoot(String),

    #[error("odd root {0} is not isotropic")]
    NotIsotropic(String),

    #[error("{0} is not a root of the datum")]
    NotARoot(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{what} is not in {class}")]
    Membership { what: String, class: &'static str },

    #[error("invalid sign form: {0}")]
    InvalidSignForm(String),

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("coordinates are not weakly decreasing: {0}")]
    NotWeaklyDecreasing(String),

    #[error("canonicalisation of {0} did not reproduce its sign pattern")]
    Canonicalize(String),

    #[error("unsupported root {0}")]
    UnsupportedRoot(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("characters live over different positive systems")]
    PositiveSystemMismatch,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
