use thiserror::Error;

use crate::code::Variant;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two codes (or a code and an instance) disagree on length or color bound.
    #[error("dimension mismatch: expected length {expected_len} over {expected_colors} colors, got length {len} over {colors} colors")]
    Dimension {
        expected_len: usize,
        expected_colors: u32,
        len: usize,
        colors: u32,
    },

    #[error("peg {index} has color {color}, outside [0, {colors})")]
    ColorOutOfRange {
        index: usize,
        color: u32,
        colors: u32,
    },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("rating {rating} does not belong to the {expected} variant")]
    VariantMismatch { expected: Variant, rating: String },

    /// The search space is larger than the caller allowed.
    #[error("search space of {required} candidates exceeds the enumeration budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("operation does not support the {0} variant")]
    UnsupportedVariant(Variant),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("formula restriction violated: {0}")]
    Restriction(String),

    #[error("assignment does not satisfy clause {clause}")]
    NotAModel { clause: usize },

    #[error("code is not a solution of the reduced instance: {0}")]
    Inconsistent(String),

    #[error("candidate list is empty")]
    EmptyCandidates,

    #[error("no code is consistent with the history")]
    Contradiction,
}
