//! Dense univariate polynomials over a generic exact field.
//!
//! Coefficients are stored in ascending degree with a nonzero leading
//! coefficient; the zero polynomial is the empty list. Degrees in this
//! crate never exceed 12, so the dense representation is the right one.

use super::intutil::{content, divisors};
use super::{ArithError, Field, Int, Rat};
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

/// A dense univariate polynomial over the field `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

/// Polynomials over the rationals, the universal substrate of the crate.
pub type UniPoly = Poly<Rat>;

impl<F: Field> Poly<F> {
    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().map_or(false, Field::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c * x^n`.
    pub fn monomial(c: F, n: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![c.zero_like(); n + 1];
        coeffs[n] = c;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, using `ctx` only to manufacture zero.
    pub fn coeff(&self, i: usize, ctx: &F) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ctx.zero_like())
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let ctx = self
            .coeffs
            .first()
            .or_else(|| other.coeffs.first())
            .cloned();
        let ctx = match ctx {
            Some(c) => c,
            None => return Poly::zero(),
        };
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i, &ctx) + other.coeff(i, &ctx));
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let ctx = &self.coeffs[0];
        let mut out = vec![ctx.zero_like(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc: Option<Poly<F>> = None;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => a.mul(&base),
                    None => base.clone(),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        match acc {
            Some(a) => a,
            // x^0 of the zero polynomial still needs a context; callers
            // never raise zero to the zeroth power.
            None => Poly::constant(
                self.coeffs
                    .first()
                    .map(|c| c.one_like())
                    .expect("0^0 polynomial power"),
            ),
        }
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), ArithError> {
        let dlead = d.leading().ok_or(ArithError::DivisionByZero)?;
        let dinv = dlead.inv().ok_or(ArithError::DivisionByZero)?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.clone();
        let mut quot = vec![dlead.zero_like(); self.coeffs.len().saturating_sub(dd)];
        while rem.coeffs.len() > dd && !rem.is_zero() {
            let k = rem.coeffs.len() - 1 - dd;
            let c = rem.leading().unwrap().clone() * dinv.clone();
            for (j, b) in d.coeffs.iter().enumerate() {
                let t = rem.coeffs[k + j].clone() - c.clone() * b.clone();
                rem.coeffs[k + j] = t;
            }
            // leading term cancels exactly
            rem.coeffs.pop();
            while rem.coeffs.last().map_or(false, Field::is_zero) {
                rem.coeffs.pop();
            }
            quot[k] = c;
        }
        Ok((Poly::new(quot), rem))
    }

    /// Exact division; errors when the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Result<Self, ArithError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(ArithError::InvalidInput("inexact polynomial division"))
        }
    }

    /// Scale so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor; `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("division by nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `g = s*self + t*other`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let ctx = match self.coeffs.first().or_else(|| other.coeffs.first()) {
            Some(c) => c.clone(),
            None => return (Poly::zero(), Poly::zero(), Poly::zero()),
        };
        let one = Poly::constant(ctx.one_like());
        let zero = Poly::zero();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("division by nonzero");
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = l.inv().expect("nonzero leading coefficient");
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let ctx = &self.coeffs[0];
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let n = ctx.from_rat_like(&Rat::from_integer(Int::from(i)));
            out.push(c.clone() * n);
        }
        Poly::new(out)
    }

    /// Resultant of two nonzero polynomials via the Euclidean scheme.
    pub fn resultant(&self, other: &Self) -> Result<F, ArithError> {
        let ctx = self
            .coeffs
            .first()
            .or_else(|| other.coeffs.first())
            .ok_or(ArithError::InvalidInput("resultant of zero polynomials"))?
            .clone();
        fn go<F: Field>(f: &Poly<F>, g: &Poly<F>, ctx: &F) -> F {
            let n = f.degree().expect("nonzero");
            match g.degree() {
                None => ctx.zero_like(),
                Some(0) => pow_field(g.leading().unwrap(), n),
                Some(m) => {
                    let (_, r) = f.div_rem(g).expect("division by nonzero");
                    if r.is_zero() {
                        return ctx.zero_like();
                    }
                    let k = r.coeffs.len() - 1;
                    let sign = if (n * m) % 2 == 1 {
                        -ctx.one_like()
                    } else {
                        ctx.one_like()
                    };
                    sign * pow_field(g.leading().unwrap(), n - k) * go(g, &r, ctx)
                }
            }
        }
        if self.is_zero() || other.is_zero() {
            return Ok(ctx.zero_like());
        }
        Ok(go(self, other, &ctx))
    }

    /// Discriminant `(-1)^(n(n-1)/2) res(f, f') / lc(f)`; requires `deg >= 2`.
    pub fn discriminant(&self) -> Result<F, ArithError> {
        let n = self.degree().ok_or(ArithError::InvalidInput("zero polynomial"))?;
        if n < 2 {
            return Err(ArithError::InvalidInput("discriminant needs degree >= 2"));
        }
        let res = self.resultant(&self.derivative())?;
        let lc = self.leading().unwrap();
        let d = res.div_exact(lc).expect("nonzero leading coefficient");
        if (n * (n - 1) / 2) % 2 == 1 {
            Ok(-d)
        } else {
            Ok(d)
        }
    }

    /// Substitute `x -> a*x + b`.
    pub fn compose_linear(&self, a: &F, b: &F) -> Self {
        let inner = Poly::new(vec![b.clone(), a.clone()]);
        self.compose(&inner)
    }

    /// Substitute another polynomial for the indeterminate.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Reversal `x^n f(1/x)` at the stated degree `n >= deg f`.
    pub fn reverse(&self, n: usize) -> Self {
        let ctx = match self.coeffs.first() {
            Some(c) => c,
            None => return Poly::zero(),
        };
        let mut out = vec![ctx.zero_like(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[n - i] = c.clone();
        }
        Poly::new(out)
    }

    /// Map coefficients into another field through `f`.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(|c| f(c)).collect())
    }
}

fn pow_field<F: Field>(base: &F, mut e: usize) -> F {
    let mut acc = base.one_like();
    let mut b = base.clone();
    loop {
        if e & 1 == 1 {
            acc = acc * b.clone();
        }
        e >>= 1;
        if e == 0 {
            return acc;
        }
        b = b.clone() * b;
    }
}

impl UniPoly {
    /// Convenience constructor from `i64` coefficients, ascending degree.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(Int::from(c)))
                .collect(),
        )
    }

    /// Clear denominators and content: returns a primitive integer
    /// coefficient vector `c` and the rational `q` with `self = q * c`.
    pub fn primitive_integer(&self) -> (Vec<Int>, Rat) {
        if self.is_zero() {
            return (Vec::new(), Rat::zero());
        }
        let mut lcm = Int::one();
        for c in &self.coeffs {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let cont = content(&ints);
        let mut out: Vec<Int> = ints.iter().map(|c| c / &cont).collect();
        // normalize sign of the leading coefficient
        if out.last().map_or(false, |l| l.is_negative()) {
            for c in &mut out {
                *c = -c.clone();
            }
            return (out, Rat::new(-cont, lcm));
        }
        (out, Rat::new(cont, lcm))
    }

    /// All rational roots with multiplicity, by divisor enumeration of the
    /// primitive integer model (rational root theorem).
    pub fn rational_roots(&self) -> Result<Vec<Rat>, ArithError> {
        if self.is_zero() {
            return Err(ArithError::InvalidInput("zero polynomial has no root set"));
        }
        let mut roots = Vec::new();
        let (ints, _) = self.primitive_integer();
        let mut f = Poly::new(ints.iter().map(|c| Rat::from_integer(c.clone())).collect());
        // strip powers of x
        while f.coeffs.first().map_or(false, Field::is_zero) {
            roots.push(Rat::zero());
            f.coeffs.remove(0);
        }
        if f.degree() == Some(0) || f.is_zero() {
            return Ok(roots);
        }
        let a0 = f.coeffs.first().unwrap().numer().abs();
        let an = f.leading().unwrap().numer().abs();
        let mut candidates = Vec::new();
        for p in divisors(&a0) {
            for q in divisors(&an) {
                let r = Rat::new(p.clone(), q.clone());
                if !candidates.contains(&r) {
                    candidates.push(r.clone());
                    candidates.push(-r);
                }
            }
        }
        for r in candidates {
            while !f.is_zero() && Field::is_zero(&f.eval(&r)) {
                roots.push(r.clone());
                let lin = Poly::new(vec![-r.clone(), Rat::one()]);
                f = f.div_exact(&lin)?;
                if f.degree() == Some(0) {
                    return Ok(roots);
                }
            }
        }
        Ok(roots)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, ratio};
    use super::*;

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_ints(coeffs)
    }

    #[test]
    fn discriminant_examples() {
        // x^3 - 6x - 6: independent oracle -4p^3 - 27q^2 for x^3+px+q
        let f = p(&[-6, -6, 0, 1]);
        assert_eq!(f.discriminant().unwrap(), rat(-4 * (-6i64).pow(3) - 27 * 36));
        assert_eq!(f.discriminant().unwrap(), rat(-108));
        // x^2 - 1
        assert_eq!(p(&[-1, 0, 1]).discriminant().unwrap(), rat(4));
        // x^3 + 3bx - 2a with (a,b) = (3,-2): same oracle
        let g = p(&[-6, -6, 0, 1]);
        assert_eq!(g.discriminant().unwrap(), rat(-108));
        // degree < 2 rejected
        assert!(p(&[1, 1]).discriminant().is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        // gcd with zero is the monic normalization
        assert_eq!(p(&[2, 4]).gcd(&Poly::zero()), p(&[1, 2]).scale(&ratio(1, 2)).monic());
        assert_eq!(p(&[2, 4]).gcd(&Poly::zero()), Poly::new(vec![ratio(1, 2), rat(1)]));
        // coprime: Euclid by hand gives 1
        assert_eq!(p(&[-6, -6, 0, 1]).gcd(&p(&[1, 0, 1])), p(&[1]));
    }

    #[test]
    fn rational_roots_examples() {
        assert!(p(&[-6, -6, 0, 1]).rational_roots().unwrap().is_empty());
        let mut r = p(&[-1, 0, 1]).rational_roots().unwrap();
        r.sort();
        assert_eq!(r, vec![rat(-1), rat(1)]);
        assert!(Poly::<Rat>::zero().rational_roots().is_err());
        // multiplicity: (x-1)^2 (x+2)
        let f = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]));
        let mut r = f.rational_roots().unwrap();
        r.sort();
        assert_eq!(r, vec![rat(-2), rat(1), rat(1)]);
        // non-integral root: 2x - 1
        assert_eq!(p(&[-1, 2]).rational_roots().unwrap(), vec![ratio(1, 2)]);
    }

    #[test]
    fn exact_division_round_trip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let df = rng.gen_range(0..=8);
            let dg = rng.gen_range(0..=8);
            let f = Poly::new((0..=df).map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect());
            let g = Poly::new((0..=dg).map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect());
            if g.is_zero() {
                continue;
            }
            assert_eq!(f.mul(&g).div_exact(&g).unwrap(), f);
        }
    }

    #[test]
    fn discriminant_zero_iff_repeated_root() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for i in 0..100 {
            let f = if i % 2 == 0 {
                // random cubic
                Poly::new(vec![
                    rat(rng.gen_range(-9..=9)),
                    rat(rng.gen_range(-9..=9)),
                    rat(rng.gen_range(-9..=9)),
                    rat(rng.gen_range(1..=9)),
                ])
            } else {
                // forced double root: (x - r)^2 (x - s)
                let r = rat(rng.gen_range(-5..=5));
                let s = rat(rng.gen_range(-5..=5));
                Poly::new(vec![-r.clone(), rat(1)])
                    .pow(2)
                    .mul(&Poly::new(vec![-s, rat(1)]))
            };
            let disc = f.discriminant().unwrap();
            let sqfree = f.gcd(&f.derivative()).degree() == Some(0);
            assert_eq!(Field::is_zero(&disc), !sqfree, "f = {f:?}");
        }
    }

    #[test]
    fn resultant_multiplicative_spot_check() {
        // res(fg, h) = res(f,h) res(g,h)
        let f = p(&[1, 3, 1]);
        let g = p(&[-2, 0, 0, 1]);
        let h = p(&[5, -1, 2]);
        let lhs = f.mul(&g).resultant(&h).unwrap();
        let rhs = f.resultant(&h).unwrap() * g.resultant(&h).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn primitive_integer_normalizes() {
        let f = Poly::new(vec![ratio(1, 2), ratio(-3, 4)]);
        let (ints, q) = f.primitive_integer();
        assert_eq!(ints, vec![Int::from(-2), Int::from(3)]);
        assert_eq!(q, ratio(-1, 4));
    }
}
