use thiserror::Error;

use crate::budget::BudgetBreach;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty word")]
    EmptyWord,

    #[error("word of length {len} exceeds the maximum of {max}")]
    WordTooLong { len: usize, max: usize },

    #[error("invalid letter {0:?}")]
    InvalidLetter(char),

    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error("matrix dimension must be at least one variable")]
    NoVariables,

    #[error("matrix size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("size {size} too small, need at least {needed}")]
    SizeTooSmall { size: usize, needed: usize },

    #[error("internal structure error: monomials {left:#b} and {right:#b} share a variable")]
    OverlappingSupport { left: u64, right: u64 },

    #[error("matrix is not strictly upper triangular")]
    NonzeroDiagonal,

    #[error("matrix is not unitriangular")]
    NonUnitDiagonal,

    #[error("series is not homogeneous")]
    Inhomogeneous,

    #[error("order must be ≥ {min}, got {order}")]
    OrderTooLow { order: usize, min: usize },

    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("missing series of order {0}")]
    MissingOrder(usize),

    #[error("order {0} is already cached")]
    AlreadyCached(usize),

    #[error("intermediate structure violated: {0}")]
    Structure(String),

    #[error("{breach} while computing order {order}")]
    BudgetExceeded {
        order: usize,
        last_completed: Option<usize>,
        breach: BudgetBreach,
    },
}
