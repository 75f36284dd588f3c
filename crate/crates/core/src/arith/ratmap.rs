//! Rational self-maps of the projective line, given by a coprime pair of
//! polynomials (the dehomogenized numerator and denominator).

use super::poly::Poly;
use super::projective::ProjPoint;
use super::{ArithError, Field};

/// A degree-`d` map `P^1 -> P^1`, `x -> num(x)/den(x)` on the affine
/// chart. `gcd(num, den) = 1`; both degrees are at most `d` and at least
/// one equals `d`. Degree 0 maps are constants.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMapP1<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
    degree: usize,
}

impl<F: Field> RationalMapP1<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self, ArithError> {
        if num.is_zero() && den.is_zero() {
            return Err(ArithError::InvalidInput("zero/zero is not a map"));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree().map_or(false, |d| d > 0) {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        } else {
            (num, den)
        };
        let dn = num.degree().unwrap_or(0);
        let dd = den.degree().unwrap_or(0);
        Ok(RationalMapP1 {
            num,
            den,
            degree: dn.max(dd),
        })
    }

    /// The constant map with the given value.
    pub fn constant(value: F) -> Self {
        let one = value.one_like();
        RationalMapP1 {
            num: Poly::constant(value),
            den: Poly::constant(one),
            degree: 0,
        }
    }

    pub fn identity(ctx: &F) -> Self {
        RationalMapP1 {
            num: Poly::new(alloc::vec![ctx.zero_like(), ctx.one_like()]),
            den: Poly::constant(ctx.one_like()),
            degree: 1,
        }
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn ctx(&self) -> &F {
        self.num
            .leading()
            .or_else(|| self.den.leading())
            .expect("nonzero pair")
    }

    /// Evaluate at a projective point; poles map to infinity.
    pub fn apply(&self, p: &ProjPoint<F>) -> ProjPoint<F> {
        match p.affine_coord() {
            Some(x) => {
                let n = self.num.eval(x);
                let d = self.den.eval(x);
                ProjPoint::new(n, d).expect("coprime pair cannot both vanish")
            }
            None => {
                // homogeneous leading coefficients at the map degree
                let ctx = self.ctx();
                let n = self.num.coeff(self.degree, ctx);
                let d = self.den.coeff(self.degree, ctx);
                ProjPoint::new(n, d).expect("degree coefficient pair nonzero")
            }
        }
    }

    /// Evaluate on the affine chart; `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        let n = self.num.eval(x);
        d.inv().map(|di| n * di)
    }

    /// Precompose with a Moebius substitution `x -> (a x + b)/(c x + d)`:
    /// returns the map `x -> self((a x + b)/(c x + d))`.
    pub fn precompose_moebius(&self, a: &F, b: &F, c: &F, d: &F) -> Result<Self, ArithError> {
        let lin_num = Poly::new(alloc::vec![b.clone(), a.clone()]);
        let lin_den = Poly::new(alloc::vec![d.clone(), c.clone()]);
        let deg = self.degree;
        let subst = |p: &Poly<F>| -> Poly<F> {
            // p((ax+b)/(cx+d)) * (cx+d)^deg
            let ctx = self.ctx();
            let mut acc = Poly::zero();
            for i in 0..=deg {
                let coeff = p.coeff(i, ctx);
                if coeff.is_zero() {
                    continue;
                }
                let term = if i == 0 {
                    lin_den.pow(deg)
                } else if i == deg {
                    lin_num.pow(deg)
                } else {
                    lin_num.pow(i).mul(&lin_den.pow(deg - i))
                };
                acc = acc.add(&term.scale(&coeff));
            }
            acc
        };
        RationalMapP1::new(subst(&self.num), subst(&self.den))
    }

    /// Scale both polynomials by a nonzero constant (the map is unchanged).
    pub fn scaled(&self, k: &F) -> Result<Self, ArithError> {
        if k.is_zero() {
            return Err(ArithError::InvalidInput("scaling by zero"));
        }
        Ok(RationalMapP1 {
            num: self.num.scale(k),
            den: self.den.scale(k),
            degree: self.degree,
        })
    }

    /// Map coefficients into another field.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Result<RationalMapP1<G>, ArithError> {
        RationalMapP1::new(self.num.map_coeffs(&f), self.den.map_coeffs(&f))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, Rat, UniPoly};
    use super::*;

    #[test]
    fn apply_and_poles() {
        // x -> (x^2 + 1)/x
        let m = RationalMapP1::new(UniPoly::from_ints(&[1, 0, 1]), UniPoly::from_ints(&[0, 1]))
            .unwrap();
        assert_eq!(m.degree(), 2);
        let img = m.apply(&ProjPoint::affine(rat(2)));
        assert_eq!(img.affine_coord().unwrap(), &super::super::ratio(5, 2));
        assert!(m.apply(&ProjPoint::affine(rat(0))).is_infinity());
        // at infinity: leading coefficients [1 : 0] -> infinity
        assert!(m.apply(&ProjPoint::infinity(&rat(0))).is_infinity());
    }

    #[test]
    fn gcd_cancellation() {
        // (x^2-1)/(x-1) reduces to x+1
        let m = RationalMapP1::new(UniPoly::from_ints(&[-1, 0, 1]), UniPoly::from_ints(&[-1, 1]))
            .unwrap();
        assert_eq!(m.degree(), 1);
        assert_eq!(m.num(), &UniPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn precompose_with_inversion() {
        // j(x) = x^2/(x+1) precomposed with x -> 1/x gives x/(x^2+x)= 1/(x+1)... computed exactly
        let m = RationalMapP1::new(UniPoly::from_ints(&[0, 0, 1]), UniPoly::from_ints(&[1, 1]))
            .unwrap();
        let c = m
            .precompose_moebius(&rat(0), &rat(1), &rat(1), &rat(0))
            .unwrap();
        for x in [2i64, 3, -5, 7] {
            let lhs = c.eval(&rat(x)).unwrap();
            let rhs = m.eval(&Rat::new(1.into(), x.into())).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
