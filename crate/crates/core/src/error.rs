use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("construction infeasible: {0}")]
    ConstructionInfeasible(String),

    #[error("reduction infeasible: {0}")]
    ReductionInfeasible(String),

    /// The enumeration does not fit the configured budget. `lower` and `upper`
    /// bracket the requested threshold without searching.
    #[error("budget exceeded: {required} instances requested, budget is {budget} (threshold in [{lower}, {upper}])")]
    BudgetExceeded {
        required: u128,
        budget: u128,
        lower: u64,
        upper: u64,
    },

    #[error("ambiguous membership: {0}")]
    AmbiguousMembership(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("linear program is unbounded")]
    Unbounded,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
