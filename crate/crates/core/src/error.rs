use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: left operand has {left_cols} columns, right operand has {right_rows} rows")]
    DimensionMismatch { left_cols: usize, right_rows: usize },

    #[error("matrix rows have inconsistent lengths (row {row} has {len}, expected {expected})")]
    RaggedRows {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("convolution operand is empty")]
    EmptyOperand,

    #[error("rank index {index} out of range for a bitvector of length {len}")]
    RankOutOfRange { index: usize, len: usize },

    #[error("profile step {step} at index {index} is outside {{0, 1}}")]
    CorruptProfile { index: usize, step: i64 },

    #[error("input is empty")]
    EmptyInput,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("node {node} has label {label}, expected 0 or 1")]
    NonBinaryLabel { node: usize, label: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("tree has {n} nodes, enumeration is limited to {max}")]
    OracleTooLarge { n: usize, max: usize },

    #[error("profile has no feasible value for size {size}")]
    IncompleteProfile { size: usize },
}
