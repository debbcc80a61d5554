use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid norm: {0}")]
    InvalidNorm(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    /// The unit ball has no finite set of extreme points (Euclidean sphere).
    #[error("unit ball of a {0} norm is not a polytope and cannot be enumerated")]
    BallNotEnumerable(&'static str),

    #[error("enumerating 2^{dim} extreme points exceeds the cap of {cap}")]
    CapExceeded { dim: usize, cap: usize },

    #[error("column {column} has support in row {row}, beyond the {m_rows} codomain rows")]
    CodomainOverflow {
        column: usize,
        row: usize,
        m_rows: usize,
    },

    #[error("operator is not between Euclidean spaces")]
    NotHilbert,

    #[error("not a degrees-of-freedom step function: {0}")]
    NotADofFunction(String),

    #[error("order {order} is too large for a profile of length {len}")]
    OrderTooLarge { order: usize, len: usize },

    #[error("brute-force search would evaluate {combinations} candidate sets")]
    TooLarge { combinations: f64 },

    #[error("profile is empty")]
    EmptyProfile,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("linear program solver failed: {0}")]
    Solver(String),

    #[error("parse error: {0}")]
    Parse(String),
}
