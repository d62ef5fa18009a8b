use thiserror::Error;

use crate::instance::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("minor order k = {k} out of range 1..={max}")]
    OrderOutOfRange { k: usize, max: usize },
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    EpsilonOutOfRange(String),
    #[error("scaling factor must be positive")]
    ZeroScale,
    #[error("LP relaxation is infeasible")]
    LpInfeasible,
    #[error("LP relaxation is unbounded")]
    LpUnbounded,
    #[error("search space of {size} points exceeds cap {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("integer overflow: {0}")]
    Overflow(&'static str),
    #[error("{0}")]
    Unsupported(&'static str),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
