use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch in {op}: left is {left}, right is {right}")]
    DimensionMismatch {
        op: &'static str,
        left: String,
        right: String,
    },

    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NonSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("the zero polynomial is not a valid input for {op}")]
    ZeroPolynomial { op: &'static str },

    #[error("cannot parse {text:?} as a rational number")]
    RationalParse { text: String },

    #[error("{lambda} is not an eigenvalue of the matrix")]
    NotAnEigenvalue { lambda: String },

    #[error("vector is not a left eigenvector for eigenvalue {lambda}")]
    NotAnEigenvector { lambda: String },

    #[error("eigenvector chain violates its defining relations")]
    InvalidChain,

    #[error("elevation of degree {degree} needs a basis of size {size}, above the cap {cap}")]
    ElevationTooLarge {
        degree: usize,
        size: u64,
        cap: u64,
    },

    #[error("monomial basis needs at least one variable and degree one")]
    EmptyBasis,

    #[error("malformed predicate: {detail}")]
    MalformedPredicate { detail: String },

    #[error("instance file is invalid: {detail}")]
    Schema { detail: String },

    #[error("hypothesis check failed for {case}: {detail}")]
    HypothesisViolation { case: &'static str, detail: String },

    #[error("internal validation failed: emitted certificate was rejected by the oracle ({detail})")]
    InternalValidation { detail: String },

    #[error("unsupported operation: {detail}")]
    Unsupported { detail: String },
}
