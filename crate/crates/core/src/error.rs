use std::path::PathBuf;

/// Errors raised anywhere in the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("series has non-unit constant term {0}")]
    NonUnit(String),
    #[error("truncation order mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(String),
    #[error("need at least {needed} points for degree bound {bound}, got {got}")]
    InsufficientPoints { needed: usize, bound: usize, got: usize },
    #[error("point ({0}, {1}) is inconsistent with the interpolating polynomial")]
    Inconsistent(String, String),
    #[error("coefficient {0} is not an integer")]
    NonInteger(String),
    #[error("label set {0} is not a subset of {1}")]
    NotSubset(String, String),
    #[error("label sets overlap: {0} and {1}")]
    Overlap(String, String),
    #[error("ground mismatch: {0} vs {1}")]
    GroundMismatch(String, String),
    #[error("label {0} out of range (labels must be < 64)")]
    LabelOutOfRange(u32),
    #[error("relabeling is not a bijection: {0}")]
    NotBijective(String),
    #[error("invalid object: {0}")]
    Invalid(String),
    #[error("matrix is not row/column sparse: {0}")]
    NonCanonical(String),
    #[error("budget exceeded: {what} requires {required}, budget is {budget}")]
    BudgetExceeded {
        what: String,
        required: u128,
        budget: u128,
    },
    #[error("generator on the empty ground")]
    EmptyGenerator,
    #[error("cache file {path}: {reason}")]
    CacheFormat { path: PathBuf, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
