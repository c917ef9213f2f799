use thiserror::Error;

use crate::model::Color;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An interior vertex has fewer colors than it and its right neighbour demand.
    #[error("list is not good at vertex {vertex}: |L| = {size} < {required}")]
    NotGood {
        vertex: usize,
        size: usize,
        required: usize,
    },

    #[error("list is not a waterfall list: color {color} is on vertices {first} and {second}")]
    NotWaterfall {
        color: Color,
        first: usize,
        second: usize,
    },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("e = a - 2b must be positive, got {0}")]
    NonPositive(i64),

    /// A construction that the theory guarantees has failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("search budget of {limit} nodes exceeded after visiting {visited}")]
    BudgetExceeded { limit: u64, visited: u64 },
}
