use thiserror::Error;

use crate::series::Weights;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient of degree {degree} requested beyond truncation order {order}")]
    BeyondTruncation { degree: usize, order: usize },

    #[error("monomial x^{j} y^{k} lies outside the weight bound {max_weight}")]
    OutsideWeightBound { j: usize, k: usize, max_weight: usize },

    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,

    #[error("weight mismatch: expected {expected}, found {found}")]
    WeightMismatch { expected: Weights, found: Weights },

    #[error("slice index {index} out of range (largest admissible index is {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("no closed form is known for diagonal g_{0}")]
    UnsupportedDiagonal(usize),

    #[error("no closed form is known for column h_{0}")]
    UnsupportedColumn(usize),

    #[error("negative exponent {exponent} at index {index}")]
    NegativeExponent { index: String, exponent: i64 },

    #[error("series must have constant term exactly 1")]
    NonUnitConstant,

    #[error("residual coefficient {value} at index {index} is not an integer exponent")]
    NonIntegerExponent { index: String, value: String },

    #[error("coefficient {value} at index {index} is not a machine integer")]
    NonIntegerCoefficient { index: String, value: String },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("reference data line {line}: {message}")]
    ReferenceData { line: usize, message: String },
}
