use thiserror::Error;

/// Errors surfaced by construction, arithmetic, and verification routines.
///
/// Anything that indicates a malformed input (bad field parameters, a basis
/// element that is not an axis, a generating set that is not closed under
/// conjugation) is reported here rather than panicking; panics are reserved
/// for internal invariant violations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mixed-field operands: {0} vs {1}")]
    MixedField(String, String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("element is not idempotent")]
    NotIdempotent,

    #[error("eigenspaces for eigenvalues 1, 0, eta do not decompose the algebra")]
    NotSemisimple,

    #[error("basis element {index} is not a primitive axis: {reason}")]
    BasisNotAxis { index: usize, reason: String },

    #[error("invariant form is invalid: {0}")]
    FormInvalid(String),

    #[error("dual miyamoto routes disagree at basis column {0}")]
    MiyamotoRouteMismatch(usize),

    #[error("not a 3-transposition set: product of {d} and {e} has order {order}")]
    NotThreeTransposition { d: String, e: String, order: String },

    #[error("closure cap of {0} elements exceeded")]
    CapExceeded(usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("span chain level {requested} was not computed (levels available: 0..={available})")]
    ChainLevel { requested: usize, available: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
