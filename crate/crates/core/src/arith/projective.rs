//! Points of the projective line over an exact field.

use super::{ArithError, Field, Int, Rat};
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A point `[x : y]` of `P^1(F)`, stored normalized: `[x : 1]` for affine
/// points and `[1 : 0]` for the point at infinity. Normalization makes
/// equality canonical and identifies scalar multiples.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjPoint<F: Field> {
    x: F,
    y: F,
}

impl<F: Field> ProjPoint<F> {
    pub fn new(x: F, y: F) -> Result<Self, ArithError> {
        if x.is_zero() && y.is_zero() {
            return Err(ArithError::InvalidInput("[0:0] is not a projective point"));
        }
        if y.is_zero() {
            return Ok(ProjPoint {
                x: x.one_like(),
                y: x.zero_like(),
            });
        }
        let yi = y.inv().expect("nonzero");
        Ok(ProjPoint {
            x: x * yi,
            y: y.one_like(),
        })
    }

    pub fn affine(x: F) -> Self {
        let y = x.one_like();
        ProjPoint { x, y }
    }

    pub fn infinity(ctx: &F) -> Self {
        ProjPoint {
            x: ctx.one_like(),
            y: ctx.zero_like(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// The affine coordinate, `None` at infinity.
    pub fn affine_coord(&self) -> Option<&F> {
        if self.is_infinity() {
            None
        } else {
            Some(&self.x)
        }
    }

    pub fn coords(&self) -> (&F, &F) {
        (&self.x, &self.y)
    }

    /// Map coordinates into another field.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> ProjPoint<G> {
        ProjPoint {
            x: f(&self.x),
            y: f(&self.y),
        }
    }
}

impl ProjPoint<Rat> {
    /// Coprime integer coordinates with positive first nonzero coordinate.
    pub fn integral_coords(&self) -> (Int, Int) {
        if self.is_infinity() {
            return (Int::from(1), Int::from(0));
        }
        let n = self.x.numer().clone();
        let d = self.x.denom().clone();
        let g = n.gcd(&d);
        let (mut a, mut b) = (n / &g, d / &g);
        let lead = if a.is_zero() { &b } else { &a };
        if lead.is_negative() {
            a = -a;
            b = -b;
        }
        (a, b)
    }
}
