use thiserror::Error;

/// Shape of a matrix as `(rows, cols)`.
pub type Shape = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("{op}: dimension mismatch between {}x{} and {}x{}", left.0, left.1, right.0, right.1)]
    DimensionMismatch {
        op: &'static str,
        left: Shape,
        right: Shape,
    },

    #[error("{op}: expected a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("row index {index} out of range for a matrix with {rows} rows")]
    RowOutOfRange { index: usize, rows: usize },

    #[error("row operation scales by zero")]
    ZeroScale,

    #[error("add_multiple targets its own source row {row}")]
    SelfAddition { row: usize },

    #[error("requested rank {rank} exceeds size {n}")]
    RankTooLarge { rank: usize, n: usize },

    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
