use thiserror::Error;

use crate::engine::ClosureReport;

/// Errors shared across the matrix, span, engine and flow layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported matrix dimension {0} (supported range is 2..=16)")]
    UnsupportedDimension(usize),

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("input list must not be empty")]
    EmptyInput,

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("matrix exponential out of range: ||tA|| = {norm:.3e} exceeds {max:.1}")]
    ExpRange { norm: f64, max: f64 },

    #[error("matrix is singular at the working tolerance")]
    Singular,

    #[error("estimate step t must be nonzero")]
    ZeroStep,

    #[error("finite-difference step h = {0:.3e} is degenerate")]
    DegenerateStep(f64),

    #[error("generator index {index} not present in the generator set")]
    IndexOutOfRange { index: usize },

    #[error("duplicate generator index {0}")]
    DuplicateIndex(usize),

    #[error(
        "closure did not stabilize within max_depth = {max_depth} (reached dim {dim} of {target_dim})"
    )]
    DepthExceeded {
        max_depth: usize,
        /// Partial closure state at the point the iteration was cut off.
        report: Box<ClosureReport>,
        dim: usize,
        target_dim: usize,
    },

    #[error("basis is linearly dependent at the working tolerance")]
    DependentBasis,

    #[error("ambient basis is not closed under double brackets (triple {0:?}, residual {1:.3e})")]
    NotLtsClosed([usize; 3], f64),

    #[error("exhaustive search supports at most {max} ambient elements, got {got}")]
    AmbientTooLarge { got: usize, max: usize },

    #[error("unknown catalog id `{0}`")]
    UnknownEntry(String),

    #[error("missing required parameter `{0}`")]
    MissingParam(&'static str),

    #[error("cannot parse bracket word `{input}`: {reason}")]
    WordParse { input: String, reason: String },
}
