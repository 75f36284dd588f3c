//! Exact arbitrary-precision arithmetic: integers, rationals, dense
//! univariate polynomials over a field, number fields, projective points
//! and rational maps of the projective line.

mod ext;
mod field;
pub(crate) mod intutil;
mod poly;
mod projective;
mod ratmap;

pub use ext::{irreducibility_over_q, ExtElem, ExtField, Irreducibility, NumberField};
pub use field::Field;
pub use intutil::{divisors, factorize, is_rational_square, isqrt, squarefree_part};
pub use poly::{Poly, UniPoly};
pub use projective::ProjPoint;
pub use ratmap::RationalMapP1;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision signed integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator (enforced by `num_rational`).
pub type Rat = BigRational;

/// Shorthand for an exact rational from an `i64`.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Shorthand for an exact rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Errors raised by the arithmetic layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithError {
    /// Input violates a precondition (zero polynomial, degree too small, ...).
    InvalidInput(&'static str),
    /// Division by zero or inversion of zero.
    DivisionByZero,
    /// An internal invariant was violated (e.g. a reducible field modulus
    /// slipped through construction).
    Integrity(&'static str),
}

impl core::fmt::Display for ArithError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ArithError::InvalidInput(m) => write!(f, "invalid input: {m}"),
            ArithError::DivisionByZero => write!(f, "division by zero"),
            ArithError::Integrity(m) => write!(f, "integrity error: {m}"),
        }
    }
}
