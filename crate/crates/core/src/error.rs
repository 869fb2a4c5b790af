use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("matrix size must be at least 1")]
    EmptyMatrix,

    #[error("evaluation point must be positive, got {0}")]
    NonPositiveBase(f64),

    #[error("zero matrix has no degrees")]
    ZeroMatrix,

    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },

    #[error("negative entry {value} at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize, value: f64 },

    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    /// Object-wise nilpotent endofunctor: mass growth is -inf for every t.
    #[error("endofunctor is nilpotent: mass growth is -inf")]
    Nilpotent,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid stability condition: {0}")]
    InvalidStability(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("not determined by the closed form: {0}")]
    Undetermined(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
