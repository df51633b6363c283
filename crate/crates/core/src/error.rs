use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator list")]
    EmptyInput,
    #[error("generators must be positive, got {0}")]
    ZeroGenerator(String),
    #[error("generators are not coprime (gcd = {0})")]
    NonCoprime(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
    #[error("{0} is not a minimal generator of the semigroup")]
    NotAGenerator(String),
    #[error("generator index {index} out of range for embedding dimension {dim}")]
    InvalidIndex { index: usize, dim: usize },
    #[error("{0} is not an element of the semigroup")]
    NotInSemigroup(String),
    #[error("vector length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("node limit of {0} exceeded")]
    LimitExceeded(u64),
    #[error("point is infeasible for the region: {0}")]
    InfeasibleInput(String),
    #[error("cut pool is empty")]
    EmptyPool,
    #[error("point {0} conflicts with the cut pool (equal or comparable to a stored point)")]
    PoolConflict(String),
    #[error("iteration cap of {0} exceeded")]
    IterationCapExceeded(usize),
    #[error("enumeration box of {volume} points exceeds the cap of {cap}")]
    BoxTooLarge { volume: u128, cap: u128 },
}

impl Error {
    /// True for errors that signal a resource cap rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::LimitExceeded(_)
                | Error::IterationCapExceeded(_)
                | Error::BoxTooLarge { .. }
                | Error::Overflow(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
