use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate point on lines {first} and {second}")]
    DuplicatePoint { first: usize, second: usize },

    #[error("line {line}: expected {expected} coordinates, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("dimension {dim} is not supported by this operation")]
    DimensionUnsupported { dim: usize },

    #[error("coordinate {coord} is not in the table of axis {axis}")]
    OutOfDomain { axis: usize, coord: Rational },

    #[error("valuation covers {found} points, point set has {expected}")]
    ValuationMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
