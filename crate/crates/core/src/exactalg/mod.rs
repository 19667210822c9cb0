//! Exact arithmetic: big rationals, elements of cyclotomic fields ℚ(ζ_n),
//! and arbitrary-precision reals for numeric embeddings.

pub mod cyclo;
pub mod linear;
pub mod rat;
pub mod real;

pub use cyclo::Cyclo;
pub use rat::Rat;
pub use real::{Complex, Real};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("cyclotomic conductor mismatch: {lhs} vs {rhs}")]
    ConductorMismatch { lhs: u32, rhs: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}
