use thiserror::Error;

use crate::identity::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid algebra dimension {0}")]
    InvalidDimension(usize),

    #[error("structure constants contain a non-finite entry")]
    NonFinite,

    #[error("division by zero element")]
    ZeroDivisor,

    #[error("singular operator {what} (smallest/largest singular value {ratio:.3e})")]
    Singular { what: &'static str, ratio: f64 },

    #[error("element is not idempotent (residual {0:.3e})")]
    NotIdempotent(f64),

    #[error("Newton search failed after {restarts} restarts, best residual {best_residual:.3e}")]
    NoConvergence { restarts: usize, best_residual: f64 },

    #[error("invalid Cayley triple: {0}")]
    InvalidTriple(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("relation violated: {what} (residual {residual:.3e})")]
    RelationViolation { what: &'static str, residual: f64 },

    #[error("subspace {0} is trivial")]
    TrivialSubspace(&'static str),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("variable {0:?} has no assigned value")]
    Unassigned(String),

    #[error("identity is not balanced")]
    NotBalanced,

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("all {0} sampled draws were rejected as near-singular")]
    AllDrawsRejected(usize),

    #[error("datum outside domain: {0}")]
    Domain(String),

    #[error("canonicalization failed: {0}")]
    Canonicalization(String),

    #[error("schema error: {0}")]
    Schema(String),
}
