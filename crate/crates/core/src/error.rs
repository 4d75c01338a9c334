use thiserror::Error;

/// Errors produced by tensor, linear-algebra and file-format operations.
#[derive(Error, Debug)]
pub enum Error {
    #[error("shape dimension {position} is zero; every mode dimension must be >= 1")]
    ZeroDimension { position: usize },

    #[error("shape {dims:?} overflows the addressable element count")]
    ShapeOverflow { dims: Vec<usize> },

    #[error("multi-index has {got} components but the shape has {expected} modes")]
    ArityMismatch { expected: usize, got: usize },

    #[error("index {index} out of range 1..={bound} in mode {mode}")]
    IndexOutOfBounds {
        mode: usize,
        index: usize,
        bound: usize,
    },

    #[error("linear position {position} out of range 1..={bound}")]
    LinearOutOfBounds { position: usize, bound: usize },

    #[error("mode {mode} invalid for an order-{order} tensor")]
    InvalidMode { mode: usize, order: usize },

    #[error("data length {got} does not match the {expected} elements of shape {dims:?}")]
    DataLengthMismatch {
        expected: usize,
        got: usize,
        dims: Vec<usize>,
    },

    #[error("matrix is {rows}x{cols} but {expected_rows}x{expected_cols} was required")]
    MatrixDimMismatch {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },

    #[error("inner dimensions disagree: left has {left} columns, right has {right} rows")]
    InnerDimMismatch { left: usize, right: usize },

    #[error("contracted dimensions disagree: mode {n} of x has I_n = {x_dim}, mode {m} of y has J_m = {y_dim}")]
    ContractedDimMismatch {
        n: usize,
        m: usize,
        x_dim: usize,
        y_dim: usize,
    },

    #[error("shapes disagree: expected {expected:?}, got {got:?}")]
    ShapeMismatch { expected: Vec<usize>, got: Vec<usize> },

    #[error("cannot stack an empty list of tensors")]
    EmptyStack,

    #[error("stacked samples must share one shape: sample 1 is {first:?}, sample {position} is {other:?}")]
    HeterogeneousShapes {
        first: Vec<usize>,
        other: Vec<usize>,
        position: usize,
    },

    #[error("{perm:?} is not a permutation of 1..={order}")]
    MalformedPermutation { perm: Vec<usize>, order: usize },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("epsilon must be non-negative")]
    NegativeEpsilon,

    #[error("tensor train requires order >= 2, got order {order}")]
    OrderTooSmall { order: usize },

    #[error("invalid tensor-train cores: {0}")]
    InvalidTrain(String),

    #[error("{path}: malformed {format} file: {reason}")]
    Format {
        format: &'static str,
        path: String,
        reason: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
