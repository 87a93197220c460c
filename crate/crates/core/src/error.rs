use thiserror::Error;

use crate::space::Violation;

/// Errors raised across the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("a linear space needs at least one point")]
    NoPoints,
    #[error("{n} points requested, at most {max} are supported")]
    TooManyPoints { n: usize, max: usize },
    #[error("point {point} is outside 1..={n}")]
    PointOutOfRange { point: u32, n: usize },
    #[error("not a linear space: {0}")]
    NotALinearSpace(Violation),
    #[error("point counts differ ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("invalid quotient map: {0}")]
    InvalidQuotient(String),
    #[error("the kept point set is empty")]
    EmptySubset,
    #[error("not a superfiguration: point {0} lies on fewer than 3 full lines")]
    NotSuperfiguration(u32),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("glynn reduction needs more than one point")]
    SinglePoint,
    #[error("point {0} lies on more than two full lines")]
    NotReducibleAt(u32),
    #[error("polynomial rings differ: {0}")]
    RingMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("step budget of {0} reductions exceeded")]
    BudgetExceeded(u64),
    #[error("scheme is not zero-dimensional (dimension {0})")]
    NotZeroDimensional(i64),
    #[error("naive enumeration of {0} assignments exceeds the oracle cap")]
    OracleCap(u128),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
