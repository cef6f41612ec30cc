use thiserror::Error;

use crate::matcore::OperatorClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },

    #[error("matrix has non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("data length {found} does not match {rows}x{cols}")]
    DataLength { rows: usize, cols: usize, found: usize },

    #[error("dimension must be positive")]
    EmptyDimension,

    #[error("jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal mass {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("{operand} is not {expected}")]
    ClassViolation { operand: &'static str, expected: OperatorClass },

    #[error("vector norm {norm} is not 1")]
    NotUnit { norm: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("identity check failed: residual {residual:e} exceeds {bound:e}")]
    IdentityCheck { residual: f64, bound: f64 },

    #[error("malformed matrix market header: {0}")]
    MalformedHeader(String),

    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },

    #[error("non-finite value on line {line}")]
    NonFiniteValue { line: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
