//! Crate-wide error type.
//!
//! Every fallible operation returns [`Result`]. Variants distinguish
//! operational problems (bad input, exceeded budgets) from internal
//! consistency failures, which the CLI maps to distinct exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("the zero polynomial has no root multiplicities")]
    ZeroPolynomial,

    #[error("{0} must be prime")]
    NotPrime(u64),

    #[error("voltage arity mismatch: expected {expected}, got {got}")]
    VoltageArity { expected: usize, got: usize },

    #[error("voltage assignment covers {got} edges, graph has {expected}")]
    VoltageLength { expected: usize, got: usize },

    #[error("base graph is not strongly connected")]
    NotStronglyConnected,

    #[error("tower is not strongly connected at level 1")]
    TowerNotConnected,

    #[error("derived graph would have {needed} vertices, budget is {budget}; raise --budget to proceed")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("prime {l} ramifies in the p^n-th cyclotomic field (l = p = {l})")]
    RamifiedPrime { l: u64 },

    #[error("valuation of zero is infinite")]
    InfiniteValuation,

    #[error("element is not integral (denominator {0})")]
    NotIntegral(String),

    #[error("Laurent polynomial is zero; {0} is undefined")]
    ZeroLaurent(&'static str),

    #[error("operation requires d = 1, assignment has d = {0}")]
    RequiresDimensionOne(usize),

    #[error("voltage assignment is not constant across edges")]
    NonConstantVoltage,

    #[error("graph is not out-regular (out-degrees differ)")]
    NotOutRegular,

    #[error("level mismatch: {0}")]
    LevelMismatch(String),

    #[error("equal-degree factorization did not split after {0} probes")]
    FactorizationStuck(usize),

    #[error("unknown vertex label {0:?}")]
    UnknownVertexLabel(String),

    #[error("malformed graph spec: {0}")]
    MalformedSpec(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
