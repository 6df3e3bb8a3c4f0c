use thiserror::Error;

/// Errors raised by the library. Variants follow the failure classes the
/// operations distinguish: bad arguments, exceeded size budgets, invalid
/// algebraic data and unmet preconditions of the constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("size budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("table is not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NotAssociative { x: usize, y: usize, z: usize },

    #[error("rewriting did not terminate within {steps} steps")]
    NonTermination { steps: usize },

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn budget(what: &'static str, needed: u128, limit: u128) -> Error {
    Error::Budget {
        what,
        needed,
        limit,
    }
}
