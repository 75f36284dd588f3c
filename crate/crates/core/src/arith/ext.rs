//! Number fields and staged field extensions.
//!
//! `ExtField<Rat>` is an absolute number field `Q[x]/(f)` with `f` monic
//! irreducible (verified at construction). `ExtField<ExtElem<Rat>>` is a
//! relative extension used when a splitting field of degree 6 is built by
//! adjoining a root and then a square root; irreducibility of the relative
//! modulus is guaranteed by the caller (a non-square discriminant guard)
//! and enforced lazily: a zero divisor surfaces as an integrity error.

use super::poly::{Poly, UniPoly};
use super::{ArithError, Field, Rat};
use crate::modp::ModPoly;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

/// `F[x]/(modulus)`, modulus monic of degree >= 2.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtField<F: Field> {
    modulus: Poly<F>,
}

/// An absolute number field over `Q`.
pub type NumberField = ExtField<Rat>;

/// An element of an extension field, reduced mod the field modulus.
#[derive(Clone, Debug)]
pub struct ExtElem<F: Field> {
    parent: Rc<ExtField<F>>,
    rep: Poly<F>,
}

/// Verdict of the rational irreducibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible(&'static str),
    /// The degree-shape fingerprint could not certify either way.
    Unknown,
}

/// Irreducibility over `Q` for degree <= 6: rational-root test for cubics
/// and below, squarefree check plus a mod-p factor-shape fingerprint above.
pub fn irreducibility_over_q(f: &UniPoly) -> Irreducibility {
    let n = match f.degree() {
        None | Some(0) => return Irreducibility::Reducible("constant polynomial"),
        Some(1) => return Irreducibility::Irreducible,
        Some(n) => n,
    };
    if f.gcd(&f.derivative()).degree() != Some(0) {
        return Irreducibility::Reducible("repeated factor");
    }
    match f.rational_roots() {
        Ok(r) if !r.is_empty() => return Irreducibility::Reducible("rational root"),
        Ok(_) => {}
        Err(_) => return Irreducibility::Reducible("zero polynomial"),
    }
    if n <= 3 {
        // a cubic or quadratic with no rational root is irreducible
        return Irreducibility::Irreducible;
    }
    let (ints, _) = f.primitive_integer();
    // intersect possible proper factor degrees over good primes
    let mut possible: Option<Vec<bool>> = None;
    let mut used = 0;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113] {
        let fp = ModPoly::from_int_coeffs(p, &ints);
        if fp.degree() != Some(n) {
            continue; // p divides the leading coefficient
        }
        if fp.gcd(&fp.derivative()).degree() != Some(0) {
            continue; // bad reduction
        }
        let shape = fp.factor_shape();
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for d in shape {
            for i in (0..=n.saturating_sub(d)).rev() {
                if sums[i] {
                    sums[i + d] = true;
                }
            }
        }
        possible = Some(match possible {
            None => sums,
            Some(prev) => prev.iter().zip(sums.iter()).map(|(a, b)| *a && *b).collect(),
        });
        used += 1;
        let any_proper = possible
            .as_ref()
            .unwrap()
            .iter()
            .enumerate()
            .any(|(d, &ok)| ok && d >= 1 && d < n);
        if !any_proper {
            return Irreducibility::Irreducible;
        }
        if used >= 25 {
            break;
        }
    }
    Irreducibility::Unknown
}

impl NumberField {
    /// Construct a number field, verifying the modulus is monic of degree
    /// 2..=6 and irreducible over `Q`.
    pub fn new(modulus: UniPoly) -> Result<Rc<Self>, ArithError> {
        let n = modulus
            .degree()
            .ok_or(ArithError::InvalidInput("zero modulus"))?;
        if !(2..=6).contains(&n) {
            return Err(ArithError::InvalidInput("modulus degree must be 2..=6"));
        }
        if !modulus.leading().map_or(false, Field::is_one) {
            return Err(ArithError::InvalidInput("modulus must be monic"));
        }
        match irreducibility_over_q(&modulus) {
            Irreducibility::Irreducible => Ok(Rc::new(ExtField { modulus })),
            Irreducibility::Reducible(_) => {
                Err(ArithError::InvalidInput("modulus reducible over Q"))
            }
            Irreducibility::Unknown => Err(ArithError::Integrity(
                "could not certify irreducibility of modulus",
            )),
        }
    }
}

impl<F: Field> ExtField<F> {
    /// Construct without an irreducibility check; the caller guarantees it.
    /// A degree-1 modulus gives the trivial extension (useful for keeping a
    /// uniform tower shape).
    pub fn new_unchecked(modulus: Poly<F>) -> Rc<Self> {
        assert!(modulus.degree().map_or(false, |d| d >= 1));
        assert!(modulus.leading().map_or(false, Field::is_one));
        Rc::new(ExtField { modulus })
    }

    pub fn modulus(&self) -> &Poly<F> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    fn coeff_ctx(&self) -> &F {
        self.modulus.leading().unwrap()
    }

    /// The element represented by `rep`, reduced mod the modulus.
    pub fn element(self: &Rc<Self>, rep: Poly<F>) -> ExtElem<F> {
        let rep = if rep.degree().map_or(false, |d| d >= self.degree()) {
            rep.div_rem(&self.modulus).expect("monic modulus").1
        } else {
            rep
        };
        ExtElem {
            parent: Rc::clone(self),
            rep,
        }
    }

    /// The class of `x`, a root of the modulus.
    pub fn gen(self: &Rc<Self>) -> ExtElem<F> {
        let one = self.coeff_ctx().one_like();
        self.element(Poly::new(vec![one.zero_like(), one]))
    }

    /// Embed a base-field element.
    pub fn embed(self: &Rc<Self>, c: F) -> ExtElem<F> {
        self.element(Poly::constant(c))
    }

    pub fn zero(self: &Rc<Self>) -> ExtElem<F> {
        self.element(Poly::zero())
    }

    pub fn one(self: &Rc<Self>) -> ExtElem<F> {
        self.embed(self.coeff_ctx().one_like())
    }
}

impl<F: Field> ExtElem<F> {
    pub fn parent(&self) -> &Rc<ExtField<F>> {
        &self.parent
    }

    pub fn rep(&self) -> &Poly<F> {
        &self.rep
    }

    fn same_parent(&self, other: &Self) {
        assert_eq!(
            self.parent.modulus, other.parent.modulus,
            "elements of different fields"
        );
    }

    /// Inverse via extended gcd against the modulus.
    pub fn try_inv(&self) -> Result<Self, ArithError> {
        if self.rep.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let (g, s, _) = self.rep.xgcd(&self.parent.modulus);
        if g.degree() != Some(0) {
            // a nonzero element with a nontrivial common factor means the
            // modulus was reducible after all
            return Err(ArithError::Integrity("reducible modulus detected"));
        }
        // g is monic, hence exactly 1: s * rep ≡ 1 (mod modulus)
        Ok(self.parent.element(s))
    }

    /// Conjugates' viewpoint: the rational value when the representative is
    /// constant (or zero), otherwise `None`.
    pub fn rational_value(&self) -> Option<Rat> {
        if self.rep.is_zero() {
            return Some(num_traits::Zero::zero());
        }
        if self.rep.degree() == Some(0) {
            return self.rep.coeffs()[0].to_rat();
        }
        None
    }
}

impl<F: Field> PartialEq for ExtElem<F> {
    fn eq(&self, other: &Self) -> bool {
        self.parent.modulus == other.parent.modulus && self.rep == other.rep
    }
}

impl<F: Field> core::ops::Add for ExtElem<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.same_parent(&rhs);
        self.parent.element(self.rep.add(&rhs.rep))
    }
}

impl<F: Field> core::ops::Sub for ExtElem<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.same_parent(&rhs);
        self.parent.element(self.rep.sub(&rhs.rep))
    }
}

impl<F: Field> core::ops::Mul for ExtElem<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.same_parent(&rhs);
        self.parent.element(self.rep.mul(&rhs.rep))
    }
}

impl<F: Field> core::ops::Neg for ExtElem<F> {
    type Output = Self;
    fn neg(self) -> Self {
        self.parent.element(self.rep.neg())
    }
}

impl<F: Field> Field for ExtElem<F> {
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn zero_like(&self) -> Self {
        self.parent.zero()
    }

    fn one_like(&self) -> Self {
        self.parent.one()
    }

    fn inv(&self) -> Option<Self> {
        match self.try_inv() {
            Ok(i) => Some(i),
            Err(ArithError::DivisionByZero) => None,
            Err(e) => panic!("field integrity violation: {e}"),
        }
    }

    fn from_rat_like(&self, q: &Rat) -> Self {
        let ctx = self.parent.coeff_ctx();
        self.parent.embed(ctx.from_rat_like(q))
    }

    fn to_rat(&self) -> Option<Rat> {
        self.rational_value()
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, ratio};
    use super::*;

    #[test]
    fn invert_examples() {
        // Q[a]/(a^2+1): a -> -a
        let k = NumberField::new(UniPoly::from_ints(&[1, 0, 1])).unwrap();
        let a = k.gen();
        assert_eq!(a.try_inv().unwrap(), -k.gen());
        assert_eq!(k.one().try_inv().unwrap(), k.one());
        // Q[a]/(a^3-6a-6): a -> (a^2-6)/6
        let k = NumberField::new(UniPoly::from_ints(&[-6, -6, 0, 1])).unwrap();
        let a = k.gen();
        let expected = k.element(Poly::new(vec![rat(-1), rat(0), ratio(1, 6)]));
        assert_eq!(a.try_inv().unwrap(), expected);
        // zero not invertible
        assert_eq!(k.zero().try_inv(), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn invert_is_exact_inverse() {
        let k = NumberField::new(UniPoly::from_ints(&[-6, -6, 0, 1])).unwrap();
        for c in [&[1i64, 2, 3][..], &[0, 1, 0], &[5, 0, -7], &[2, 2, 2]] {
            let x = k.element(UniPoly::from_ints(c));
            let xi = x.try_inv().unwrap();
            assert_eq!(x * xi, k.one());
        }
    }

    #[test]
    fn rational_value_examples() {
        let k = NumberField::new(UniPoly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(k.embed(ratio(5, 3)).rational_value(), Some(ratio(5, 3)));
        assert_eq!(k.gen().rational_value(), None);
        // (a^2-6)/6 + (6-a^2)/6 = 0 in Q[a]/(a^3-6a-6)
        let k = NumberField::new(UniPoly::from_ints(&[-6, -6, 0, 1])).unwrap();
        let x = k.element(Poly::new(vec![rat(-1), rat(0), ratio(1, 6)]));
        let y = k.element(Poly::new(vec![rat(1), rat(0), ratio(-1, 6)]));
        assert_eq!((x + y).rational_value(), Some(rat(0)));
    }

    #[test]
    fn construction_rejects_bad_moduli() {
        assert!(NumberField::new(UniPoly::from_ints(&[-1, 0, 1])).is_err()); // x^2-1 reducible
        assert!(NumberField::new(UniPoly::from_ints(&[1, 1])).is_err()); // degree 1
        assert!(NumberField::new(UniPoly::from_ints(&[2, 0, 2])).is_err()); // not monic
    }

    #[test]
    fn irreducibility_fingerprint_degree6() {
        // x^6 - 2 is irreducible (Eisenstein); the fingerprint should agree
        let f = UniPoly::from_ints(&[-2, 0, 0, 0, 0, 0, 1]);
        assert_eq!(irreducibility_over_q(&f), Irreducibility::Irreducible);
        // (x^2+1)^3 is a repeated factor
        let g = UniPoly::from_ints(&[1, 0, 1]).pow(3);
        assert_eq!(
            irreducibility_over_q(&g),
            Irreducibility::Reducible("repeated factor")
        );
        // (x^2+1)(x^2+2)(x^2+3) squarefree but reducible: fingerprint may
        // not certify, but must never claim irreducible
        let h = UniPoly::from_ints(&[1, 0, 1])
            .mul(&UniPoly::from_ints(&[2, 0, 1]))
            .mul(&UniPoly::from_ints(&[3, 0, 1]));
        assert_ne!(irreducibility_over_q(&h), Irreducibility::Irreducible);
    }

    #[test]
    fn tower_extension_arithmetic() {
        // Q(cbrt2) then adjoin sqrt(-3): elements invert exactly
        let k1 = NumberField::new(UniPoly::from_ints(&[-2, 0, 0, 1])).unwrap();
        let minus3 = k1.embed(rat(-3));
        let modulus = Poly::new(vec![-minus3.clone(), k1.zero(), k1.one()]);
        let k2 = ExtField::new_unchecked(modulus);
        let s = k2.gen(); // sqrt(-3)
        let t = k2.embed(k1.gen()); // cbrt(2)
        let x = s.clone() * t.clone() + k2.one();
        let xi = x.try_inv().unwrap();
        assert_eq!(x * xi, k2.one());
        assert_eq!(s.clone() * s, k2.embed(minus3));
    }
}
