//! The field abstraction shared by polynomials, curves and Moebius
//! transformations.
//!
//! Elements of extension fields carry their parent, so constants cannot be
//! produced out of thin air; the `*_like` constructors derive the parent
//! context from an existing element.

use super::Rat;
use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};
use num_traits::{One, Zero};

/// An exact field: `Q`, a number field, or a staged extension thereof.
///
/// All operations are exact; `inv` returns `None` exactly on zero.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn is_zero(&self) -> bool;
    /// The zero of the same field as `self`.
    fn zero_like(&self) -> Self;
    /// The one of the same field as `self`.
    fn one_like(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Embed a rational into the same field as `self`.
    fn from_rat_like(&self, q: &Rat) -> Self;
    /// The rational value when the element lies in the prime field.
    fn to_rat(&self) -> Option<Rat>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    /// Exact division; `None` when `d` is zero.
    fn div_exact(&self, d: &Self) -> Option<Self> {
        d.inv().map(|i| self.clone() * i)
    }
}

impl Field for Rat {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn zero_like(&self) -> Self {
        Rat::zero()
    }

    fn one_like(&self) -> Self {
        Rat::one()
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rat_like(&self, q: &Rat) -> Self {
        q.clone()
    }

    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
}
