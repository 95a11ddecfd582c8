use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid coefficient {0:?}: entries must be nonnegative")]
    InvalidCoefficient(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("dimension mismatch: vector has n={expected}, sign assignment has n={found}")]
    DimensionError { expected: usize, found: usize },

    #[error("coefficient vector is zero; the operation needs a positive norm")]
    ZeroNorm,

    #[error("invalid threshold {0}: must be nonnegative (strictly positive for delta)")]
    InvalidThreshold(String),

    #[error("n={n} exceeds the direct enumeration cap {cap}; use the meet-in-the-middle engine")]
    UseMitm { n: usize, cap: usize },

    #[error("n={n} exceeds the limit {max} for this operation")]
    TooLarge { n: usize, max: usize },

    #[error("lemma precondition violated: {0}")]
    LemmaPreconditionViolated(String),

    #[error("no witness among the candidate sign vectors for a={0}")]
    NoWitness(String),

    #[error("entry {index} is {value}; every entry must be at least 1")]
    NonPositiveEntry { index: usize, value: u64 },

    #[error("vector {0} has a zero entry; G'_n is defined over nonzero coordinates")]
    ZeroEntry(String),

    #[error("coefficients too large after scaling to integers (entry sum must stay below 2^62)")]
    CoefficientOverflow,

    #[error("search space holds about {estimated} vectors, over the budget of {budget}")]
    BudgetExceeded { estimated: u128, budget: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
