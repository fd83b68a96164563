use thiserror::Error;

/// Errors shared across the crate.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix entry ({row},{col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("entry buffer has length {len}, expected {rows}x{cols}")]
    EntryCount { len: usize, rows: usize, cols: usize },

    #[error("matrix is singular to working precision")]
    SingularMatrix,

    #[error("eigenvector matrix condition {cond:.3e} exceeds limit {limit:.3e}")]
    NonDiagonalizable { cond: f64, limit: f64 },

    #[error("eigenvalue {value} lies on the branch cut (-inf, 0]")]
    SpectrumOnCut { value: num_complex::Complex64 },

    #[error("resolvent (A + {s})^-1 is singular; the operator is not sectorial on the scan range")]
    ResolventSingular { s: f64 },

    #[error("exponent {alpha} outside the open interval (0, 1)")]
    AlphaOutOfRange { alpha: f64 },

    #[error("Dunford route requires Re(z) < 0, got {re}")]
    ExponentNotNegative { re: f64 },

    #[error("tail tolerance cannot be met for decay exponent {re}")]
    InvalidExponent { re: f64 },

    #[error("regularizer order m = {m} does not dominate |Re(eta)| = {re_eta}")]
    RegularizerOrderTooLow { m: u32, re_eta: f64 },

    #[error("no structure metadata usable for an analytic certificate")]
    StructureUnknown,

    #[error("no samples supplied")]
    EmptySamples,

    #[error("invalid samples: {0}")]
    InvalidSamples(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
