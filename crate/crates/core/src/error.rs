use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// No nest point was left at some step of the greedy elimination.
    #[error("hypergraph is not beta-acyclic")]
    NotBetaAcyclic,

    /// The supplied ordering is not a β-elimination ordering of the input.
    #[error("ordering is not a beta-elimination ordering of the hypergraph")]
    InvalidOrdering,

    #[error("enumeration over {size} vertices exceeds the limit of {limit}")]
    TooLarge { size: usize, limit: usize },

    /// A structural property the counting recursion relies on did not hold.
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
