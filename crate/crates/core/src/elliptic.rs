//! Short-Weierstrass elliptic curves over exact fields: invariants, the
//! chord-tangent group law, rational torsion, quadratic twists, 2-isogenies,
//! and the Frey curve attached to a primitive solution of a^2 + b^3 = c^10.

use crate::arith::intutil::{factorize, is_prime_u64, pow_mod_u64};
use crate::arith::{is_rational_square, rat, ArithError, Field, Int, Rat};
use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `y^2 = x^3 + a2 x^2 + a x + b`, nonsingular. The `a2` term is optional so
/// intermediate 2-isogeny models can be represented directly.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve<F: Field> {
    a2: Option<F>,
    a: F,
    b: F,
}

/// The standard invariants of a curve; `c4^3 - c6^2 = 1728 Δ` and
/// `j Δ = c4^3` hold exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveInvariants<F: Field> {
    pub delta: F,
    pub c4: F,
    pub c6: F,
    pub j: F,
}

/// A point of a curve: affine coordinates or the identity at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum CurvePoint<F: Field> {
    Infinity,
    Affine(F, F),
}

impl<F: Field> CurvePoint<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn xy(&self) -> Option<(&F, &F)> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(x, y) => Some((x, y)),
        }
    }
}

impl<F: Field> WeierstrassCurve<F> {
    /// Short model `y^2 = x^3 + a x + b`.
    pub fn new(a: F, b: F) -> Result<Self, ArithError> {
        Self::build(None, a, b)
    }

    /// Intermediate model `y^2 = x^3 + a2 x^2 + a x + b`.
    pub fn with_a2(a2: F, a: F, b: F) -> Result<Self, ArithError> {
        Self::build(Some(a2), a, b)
    }

    fn build(a2: Option<F>, a: F, b: F) -> Result<Self, ArithError> {
        let curve = WeierstrassCurve { a2, a, b };
        if curve.invariants_unchecked().delta.is_zero() {
            return Err(ArithError::InvalidInput("singular curve"));
        }
        Ok(curve)
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    pub fn a2(&self) -> Option<&F> {
        self.a2.as_ref()
    }

    fn k(&self, n: i64) -> F {
        self.a.from_rat_like(&rat(n))
    }

    fn a2_or_zero(&self) -> F {
        self.a2.clone().unwrap_or_else(|| self.a.zero_like())
    }

    /// The right-hand side `x^3 + a2 x^2 + a x + b`.
    pub fn rhs(&self, x: &F) -> F {
        ((x.clone() + self.a2_or_zero()) * x.clone() + self.a.clone()) * x.clone()
            + self.b.clone()
    }

    pub fn contains(&self, p: &CurvePoint<F>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => y.clone() * y.clone() == self.rhs(x),
        }
    }

    /// A validated affine point.
    pub fn point(&self, x: F, y: F) -> Result<CurvePoint<F>, ArithError> {
        let p = CurvePoint::Affine(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(ArithError::InvalidInput("point is not on the curve"))
        }
    }

    fn invariants_unchecked(&self) -> CurveInvariants<F> {
        let a2 = self.a2_or_zero();
        let b2 = self.k(4) * a2;
        let b4 = self.k(2) * self.a.clone();
        let b6 = self.k(4) * self.b.clone();
        let c4 = b2.clone() * b2.clone() - self.k(24) * b4.clone();
        let c6 = -(b2.clone() * b2.clone() * b2.clone()) + self.k(36) * b2 * b4
            - self.k(216) * b6;
        let delta = (c4.clone() * c4.clone() * c4.clone() - c6.clone() * c6.clone())
            .div_exact(&self.k(1728))
            .expect("1728 is invertible");
        let j = delta
            .inv()
            .map(|di| c4.clone() * c4.clone() * c4.clone() * di)
            .unwrap_or_else(|| delta.zero_like());
        CurveInvariants { delta, c4, c6, j }
    }

    /// Exact invariants `(Δ, c4, c6, j)`.
    pub fn invariants(&self) -> CurveInvariants<F> {
        self.invariants_unchecked()
    }

    pub fn neg(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x.clone(), -y.clone()),
        }
    }

    /// Chord-tangent addition.
    pub fn add(
        &self,
        p: &CurvePoint<F>,
        q: &CurvePoint<F>,
    ) -> Result<CurvePoint<F>, ArithError> {
        if !self.contains(p) || !self.contains(q) {
            return Err(ArithError::InvalidInput("point is not on the curve"));
        }
        let (x1, y1) = match p.xy() {
            None => return Ok(q.clone()),
            Some(v) => v,
        };
        let (x2, y2) = match q.xy() {
            None => return Ok(p.clone()),
            Some(v) => v,
        };
        let lambda = if x1 == x2 {
            if (y1.clone() + y2.clone()).is_zero() {
                return Ok(CurvePoint::Infinity);
            }
            // Tangent: (3x^2 + 2 a2 x + a) / 2y.
            let num = self.k(3) * x1.clone() * x1.clone()
                + self.k(2) * self.a2_or_zero() * x1.clone()
                + self.a.clone();
            num.div_exact(&(self.k(2) * y1.clone())).expect("y nonzero")
        } else {
            (y2.clone() - y1.clone())
                .div_exact(&(x2.clone() - x1.clone()))
                .expect("distinct x")
        };
        let x3 = lambda.clone() * lambda.clone()
            - self.a2_or_zero()
            - x1.clone()
            - x2.clone();
        let y3 = lambda * (x1.clone() - x3.clone()) - y1.clone();
        Ok(CurvePoint::Affine(x3, y3))
    }

    /// `n P` by double-and-add; `n` may be zero.
    pub fn mul(&self, n: u64, p: &CurvePoint<F>) -> Result<CurvePoint<F>, ArithError> {
        let mut acc = CurvePoint::Infinity;
        let mut base = p.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            base = self.add(&base, &base)?;
            n >>= 1;
        }
        Ok(acc)
    }

    /// The quadratic twist by `d`: coefficients scale by `d, d^2, d^3`; the
    /// j-invariant is preserved.
    pub fn quadratic_twist(&self, d: &F) -> Result<Self, ArithError> {
        if d.is_zero() {
            return Err(ArithError::InvalidInput("twist by zero"));
        }
        let d2 = d.clone() * d.clone();
        let d3 = d2.clone() * d.clone();
        WeierstrassCurve::build(
            self.a2.clone().map(|a2| a2 * d.clone()),
            self.a.clone() * d2,
            self.b.clone() * d3,
        )
    }

    /// Quotient by the 2-torsion point `(x0, 0)`: translate the kernel to the
    /// origin, giving `y^2 = x^3 + A x^2 + B x`, and return the standard
    /// codomain `y^2 = x^3 - 2A x^2 + (A^2 - 4B) x` with its j-invariant.
    pub fn two_isogeny(&self, x0: &F) -> Result<(WeierstrassCurve<F>, F), ArithError> {
        if !self.rhs(x0).is_zero() {
            return Err(ArithError::InvalidInput("(x0, 0) is not on the curve"));
        }
        let a2 = self.a2_or_zero();
        let big_a = self.k(3) * x0.clone() + a2.clone();
        let big_b = self.k(3) * x0.clone() * x0.clone()
            + self.k(2) * a2 * x0.clone()
            + self.a.clone();
        let codomain = WeierstrassCurve::with_a2(
            -(self.k(2) * big_a.clone()),
            big_a.clone() * big_a - self.k(4) * big_b,
            self.a.zero_like(),
        )?;
        let j = codomain.invariants().j.clone();
        Ok((codomain, j))
    }

    /// Image of a point under the 2-isogeny with kernel `(x0, 0)`:
    /// `(x, y) -> (X, Y)` with `X = u + A + B/u`, `Y = y (1 - B/u^2)` in the
    /// translated coordinate `u = x - x0`.
    pub fn two_isogeny_image(
        &self,
        x0: &F,
        p: &CurvePoint<F>,
    ) -> Result<CurvePoint<F>, ArithError> {
        if !self.rhs(x0).is_zero() {
            return Err(ArithError::InvalidInput("(x0, 0) is not on the curve"));
        }
        if !self.contains(p) {
            return Err(ArithError::InvalidInput("point is not on the curve"));
        }
        let (x, y) = match p.xy() {
            None => return Ok(CurvePoint::Infinity),
            Some(v) => v,
        };
        let a2 = self.a2_or_zero();
        let big_a = self.k(3) * x0.clone() + a2.clone();
        let big_b = self.k(3) * x0.clone() * x0.clone()
            + self.k(2) * a2 * x0.clone()
            + self.a.clone();
        let u = x.clone() - x0.clone();
        if u.is_zero() {
            return Ok(CurvePoint::Infinity);
        }
        let ui = u.inv().expect("nonzero");
        let big_x = u.clone() + big_a + big_b.clone() * ui.clone();
        let big_y = y.clone() * (self.k(1) - big_b * ui.clone() * ui);
        Ok(CurvePoint::Affine(big_x, big_y))
    }
}

// ---------------------------------------------------------------------------
// Primitive triples and Frey curves
// ---------------------------------------------------------------------------

/// A primitive integral solution of `a^2 + b^3 = c^10`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveTriple {
    a: Int,
    b: Int,
    c: Int,
}

impl PrimitiveTriple {
    pub fn new(a: Int, b: Int, c: Int) -> Result<Self, ArithError> {
        if &a * &a + &b * &b * &b != c.pow(10) {
            return Err(ArithError::InvalidInput("a^2 + b^3 != c^10"));
        }
        if a.gcd(&b).gcd(&c) != Int::one() {
            return Err(ArithError::InvalidInput("triple is not primitive"));
        }
        // Pairwise coprimality follows from primitivity and the equation.
        debug_assert!(a.gcd(&b).is_one() && a.gcd(&c).is_one() && b.gcd(&c).is_one());
        Ok(PrimitiveTriple { a, b, c })
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<Self, ArithError> {
        Self::new(Int::from(a), Int::from(b), Int::from(c))
    }

    pub fn a(&self) -> &Int {
        &self.a
    }

    pub fn b(&self) -> &Int {
        &self.b
    }

    pub fn c(&self) -> &Int {
        &self.c
    }
}

/// The Frey curve `y^2 = x^3 + 3b x - 2a` of a primitive triple; it has
/// `Δ = -12^3 c^10` and `j = 12^3 b^3 / c^10`, so triples with `c = 0` give a
/// singular cubic and are rejected.
pub fn frey_curve(t: &PrimitiveTriple) -> Result<WeierstrassCurve<Rat>, ArithError> {
    if t.c.is_zero() {
        return Err(ArithError::InvalidInput(
            "degenerate triple with c = 0 yields a singular curve",
        ));
    }
    WeierstrassCurve::new(
        Rat::from_integer(Int::from(3) * &t.b),
        Rat::from_integer(Int::from(-2) * &t.a),
    )
}

/// Whether `j - 1728` is `-3` times a rational square (including zero).
pub fn minus3_square_test(j: &Rat) -> bool {
    let d = j - rat(1728);
    if Field::is_zero(&d) {
        return true;
    }
    is_rational_square(&(rat(-3) * d))
}

// ---------------------------------------------------------------------------
// Rational torsion
// ---------------------------------------------------------------------------

/// The rational torsion subgroup: all points and the group order.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionGroup {
    pub points: Vec<CurvePoint<Rat>>,
    pub order: usize,
}

/// Count points of the reduction mod a good odd prime by direct enumeration.
fn count_points_mod_p(a2: &Int, a4: &Int, a6: &Int, p: u64) -> u64 {
    let m = |x: &Int| x.mod_floor(&Int::from(p)).to_u64().expect("fits");
    let (a2, a4, a6) = (m(a2), m(a4), m(a6));
    let mut count = 1u64; // infinity
    for x in 0..p {
        let rhs = (((x + a2) % p * x + a4) % p * x + a6) % p;
        if rhs == 0 {
            count += 1;
        } else if pow_mod_u64(rhs, (p - 1) / 2, p) == 1 {
            count += 2;
        }
    }
    count
}

/// All `y >= 0` with `y^2` dividing `n`.
fn square_divisor_roots(n: &Int) -> Vec<Int> {
    let mut out = vec![Int::one()];
    for (q, e) in factorize(&n.abs()) {
        let reps: Vec<Int> = (0..=e / 2).map(|k| q.pow(k)).collect();
        out = out
            .iter()
            .flat_map(|d| reps.iter().map(move |r| d * r))
            .collect();
    }
    out.sort();
    out.dedup();
    out
}

/// All integer roots of the monic cubic `x^3 + c2 x^2 + c1 x + c0`, found
/// by binary search on the (at most three) monotone pieces. This avoids
/// enumerating divisors of `c0`, which Lutz-Nagell candidates make huge.
fn integer_cubic_roots(c2: &Int, c1: &Int, c0: &Int) -> Vec<Int> {
    let g = |x: &Int| ((x + c2) * x + c1) * x + c0;
    // Cauchy bound: all real roots lie in [-m, m].
    let m = Int::one() + c2.abs().max(c1.abs()).max(c0.abs());
    let mut roots: Vec<Int> = Vec::new();
    // Binary search for a root of a weakly monotone g on [lo, hi].
    let mut search = |mut lo: Int, mut hi: Int, increasing: bool| {
        if lo > hi {
            return;
        }
        let sgn = |x: &Int| if increasing { g(x) } else { -g(x) };
        if sgn(&lo).is_positive() || sgn(&hi).is_negative() {
            return;
        }
        while lo < hi {
            let mid = (&lo + &hi).div_floor(&Int::from(2));
            if sgn(&mid).is_negative() {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if g(&lo).is_zero() {
            roots.push(lo);
        }
    };
    // Critical points of g are (-c2 +- sqrt(d)) / 3 with d = c2^2 - 3 c1.
    let d = c2 * c2 - Int::from(3) * c1;
    if d.is_positive() {
        let s = crate::arith::isqrt(&d);
        // f1 = floor of the smaller critical point: the largest k with
        // 3k + c2 <= -sqrt(d), i.e. t = -(3k + c2) >= 0 and t^2 >= d.
        let mut f1: Int = (-c2 - &s).div_floor(&Int::from(3));
        while {
            let t: Int = -(Int::from(3) * &f1 + c2);
            t.is_negative() || &t * &t < d
        } {
            f1 -= 1;
        }
        // f2 = floor of the larger critical point: the largest k with
        // 3k + c2 <= sqrt(d), i.e. t = 3k + c2 <= 0 or t^2 <= d.
        let mut f2: Int = (-c2 + &s).div_floor(&Int::from(3)) + 1;
        while {
            let t: Int = Int::from(3) * &f2 + c2;
            t.is_positive() && &t * &t > d
        } {
            f2 -= 1;
        }
        search(-m.clone(), f1.clone(), true);
        search(&f1 + 1, f2.clone(), false);
        search(&f2 + 1, m, true);
    } else {
        // Nonpositive discriminant of g': globally nondecreasing.
        search(-m.clone(), m, true);
    }
    roots.sort();
    roots.dedup();
    roots
}

/// The full rational torsion subgroup of a curve over `Q`.
///
/// The order is bounded by the gcd of the point counts modulo the first two
/// good primes `>= 5` (reduction is injective on torsion there), and the
/// candidate points come from the Lutz-Nagell condition on an integral model:
/// `y = 0` or `y^2 | Δ`.
pub fn torsion_points(curve: &WeierstrassCurve<Rat>) -> TorsionGroup {
    // Integral model: x -> x/u^2, y -> y/u^3 with u clearing all denominators.
    let a2q = curve.a2().cloned().unwrap_or_else(Rat::zero);
    let mut u = Int::one();
    for c in [&a2q, curve.a(), curve.b()] {
        u = u.lcm(c.denom());
    }
    let a2 = &a2q * Rat::from_integer(&u * &u);
    let a4 = curve.a() * Rat::from_integer(u.pow(4));
    let a6 = curve.b() * Rat::from_integer(u.pow(6));
    debug_assert!(a2.is_integer() && a4.is_integer() && a6.is_integer());
    let (a2, a4, a6) = (a2.to_integer(), a4.to_integer(), a6.to_integer());
    let int_curve = WeierstrassCurve::with_a2(
        Rat::from_integer(a2.clone()),
        Rat::from_integer(a4.clone()),
        Rat::from_integer(a6.clone()),
    )
    .expect("integral model of a nonsingular curve");
    let delta_rat = int_curve.invariants().delta;
    debug_assert!(delta_rat.is_integer());
    let delta = delta_rat.to_integer();

    // Reduction bound from two good primes >= 5.
    let mut bound = 0u64;
    let mut found = 0;
    let mut p = 5u64;
    while found < 2 {
        if is_prime_u64(p) && !delta.mod_floor(&Int::from(p)).is_zero() {
            let n = count_points_mod_p(&a2, &a4, &a6, p);
            bound = if bound == 0 { n } else { bound.gcd(&n) };
            found += 1;
        }
        p += 1;
    }

    // Lutz-Nagell candidates on the integral model.
    let mut ys = square_divisor_roots(&delta);
    ys.insert(0, Int::zero());
    let mut points = vec![CurvePoint::Infinity];
    for y in ys {
        let c0 = &a6 - &y * &y;
        for x in integer_cubic_roots(&a2, &a4, &c0) {
            let x = Rat::from_integer(x);
            for yy in [Rat::from_integer(y.clone()), Rat::from_integer(-&y)] {
                let cand = CurvePoint::Affine(x.clone(), yy);
                if !int_curve.contains(&cand) || points.contains(&cand) {
                    continue;
                }
                // Confirm finite order within the reduction bound.
                let torsion = (1..=bound).any(|n| {
                    int_curve.mul(n, &cand).map_or(false, |q| q.is_infinity())
                });
                if torsion {
                    points.push(cand);
                }
            }
        }
    }

    // Map back to the original model.
    let u2 = Rat::from_integer(&u * &u);
    let u3 = Rat::from_integer(&u * &u * &u);
    let points: Vec<CurvePoint<Rat>> = points
        .into_iter()
        .map(|pt| match pt {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x / &u2, y / &u3),
        })
        .collect();
    let order = points.len();
    TorsionGroup { points, order }
}
