//! Exact scalars: rationals, polynomials, rational functions, truncated Laurent
//! series and a prime field used for rank certificates.

mod fppoly;
mod laurent;
mod modp;
mod poly;
mod ratfunc;
mod rational;
mod scalar;

pub use fppoly::FpPoly;
pub use laurent::Laurent;
pub use modp::{Fp, MODULUS};
pub use poly::Poly;
pub use ratfunc::{laurent_at_point, ratfunc_eval, series_at_infinity, RatFunc};
pub use rational::Rational;
pub use scalar::{AtPoint, Lin, Scalar, SeriesAt, SeriesAtInfinity, Specializer, Symbolic};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("cannot parse rational number from {0:?}")]
    ParseRational(String),
    #[error("denominator vanishes at {0}")]
    PoleAtPoint(Rational),
    #[error("the zero function has no Laurent order")]
    ZeroFunction,
    #[error("numerator degree exceeds denominator degree; pole at infinity")]
    PoleAtInfinity,
    #[error("inverse of an identically vanishing linear form")]
    VanishingLinear,
}
