use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("assignment has {got} variables, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("query budget of {budget} exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("variable x{} is already fixed to a different value", index + 1)]
    ConflictingFix { index: usize },

    #[error("enumeration limit exceeded: {needed} checks, limit {limit}")]
    LimitExceeded { needed: u128, limit: u128 },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("learner found more terms than the declared bound s_max = {s_max}")]
    TooManyTerms { s_max: usize },

    #[error("membership oracle answered 0 on the starting assignment")]
    NotPositive,

    #[error("invalid document: {0}")]
    InvalidDocument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
