use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("modulus {0} is outside the supported range")]
    ModulusTooLarge(u64),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,

    #[error("invalid rank {rank} for type {label}")]
    InvalidRank { label: String, rank: usize },

    #[error("type {0} only carries table data, no root system is constructed")]
    TableOnly(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("algebra has no matrix realization")]
    Unrealized,

    #[error("vector does not lie in the algebra")]
    NotInAlgebra,

    #[error("element is not p-nilpotent")]
    NotPNilpotent,

    #[error("matrix nilpotency order {order} is not below p = {p}")]
    NilpotencyOrderTooLarge { order: usize, p: u32 },

    #[error("undetermined: {what} needs {needed} enumerations, budget is {budget}")]
    Undetermined { what: String, needed: u128, budget: u128 },

    #[error("Killing form is degenerate")]
    DegenerateKilling,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_undetermined(&self) -> bool {
        matches!(self, Error::Undetermined { .. })
    }
}
