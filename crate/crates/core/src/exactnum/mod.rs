//! Exact scalars: arbitrary-precision rationals and real quadratic fields.

mod quad;
mod rational;
mod scalar;

pub use quad::{is_square_free, rationalize_radicand, square_part, QuadExt};
pub use rational::{rational_content, Rational};
pub use scalar::{Coeff, Scalar};


use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched radicands sqrt({0}) and sqrt({1})")]
    RadicandMismatch(u64, u64),
    #[error("radicand {0} is not square-free and at least 2")]
    InvalidRadicand(u64),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}
