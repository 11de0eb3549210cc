//! Exact rational and rational-function arithmetic.

mod intpoly;
mod parse;
mod phase;
mod poly;
mod rat;
mod ratfunc;

pub use intpoly::IntPoly;
pub use phase::Phase;
pub use poly::Poly;
pub use rat::Rat;
pub use ratfunc::{ArithOp, RatFunc};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution makes the denominator identically zero")]
    DegenerateSubstitution,
    #[error("parse error: {0}")]
    Parse(String),
}
