//! p-adic analysis over `Z_p`: valuations, Newton polygons, Hensel lifting,
//! and exhaustive value-class computation for polynomials and rational maps.
//!
//! The central object is [`ValueClassSet`]: a finite description of the set
//! `{ (v_p(f(x)), f(x)/p^v mod p^m) : x in a region of P^1(Q_p) }`. Explicit
//! classes are exact inside the window bounded by the optional high/low
//! markers; a high marker at threshold `T` conservatively asserts that every
//! class with valuation `>= T` may occur (including valuation infinity, i.e.
//! the value 0), and a low marker the mirror statement for poles. A complete
//! set is therefore sound both for reading off which classes occur inside the
//! window and for proving two images disjoint.

use crate::arith::intutil::{int_valuation, is_prime_u64};
use crate::arith::{ArithError, Int, Rat, RationalMapP1, UniPoly};
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `v_p(q)`, or `None` for `q = 0` (valuation infinity).
pub fn padic_valuation(q: &Rat, p: u64) -> Option<i64> {
    debug_assert!(is_prime_u64(p));
    if q.is_zero() {
        return None;
    }
    let pb = Int::from(p);
    Some(int_valuation(q.numer(), &pb) as i64 - int_valuation(q.denom(), &pb) as i64)
}

fn ival(x: &Int, p: u64) -> Option<i64> {
    if x.is_zero() {
        None
    } else {
        Some(int_valuation(x, &Int::from(p)) as i64)
    }
}

/// The unit part `x / p^{v_p(x)}` reduced into `[1, p^m)`.
fn unit_mod(x: &Int, p: u64, m: u32) -> Int {
    debug_assert!(!x.is_zero());
    let pb = Int::from(p);
    let v = int_valuation(x, &pb);
    let pm = pb.pow(m);
    (x / pb.pow(v)).mod_floor(&pm)
}

fn inv_mod(a: &Int, modulus: &Int) -> Option<Int> {
    let e = a.extended_gcd(modulus);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(modulus))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Newton polygons
// ---------------------------------------------------------------------------

/// Lower convex hull of the coefficient valuation points `(i, v_p(c_i))`.
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonPolygon {
    vertices: Vec<(usize, Rat)>,
    segments: Vec<(Rat, usize)>,
}

impl NewtonPolygon {
    pub fn vertices(&self) -> &[(usize, Rat)] {
        &self.vertices
    }

    /// `(slope, horizontal length)` pairs, slopes strictly increasing.
    pub fn segments(&self) -> &[(Rat, usize)] {
        &self.segments
    }

    /// Root valuations with multiplicity: the negatives of the slopes.
    pub fn root_valuations(&self) -> Vec<(Rat, usize)> {
        self.segments.iter().map(|(s, l)| (-s.clone(), *l)).collect()
    }
}

/// Newton polygon of a nonzero polynomial with respect to a prime `p`.
pub fn newton_polygon(f: &UniPoly, p: u64) -> Result<NewtonPolygon, ArithError> {
    if !is_prime_u64(p) {
        return Err(ArithError::InvalidInput("p must be prime"));
    }
    if f.is_zero() {
        return Err(ArithError::InvalidInput(
            "Newton polygon of the zero polynomial",
        ));
    }
    let points: Vec<(usize, Rat)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let v = padic_valuation(c, p).expect("nonzero coefficient");
            (i, Rat::from_integer(Int::from(v)))
        })
        .collect();
    // Monotone-chain lower hull; collinear middle points are dropped so the
    // segment slopes come out strictly increasing.
    let slope = |a: &(usize, Rat), b: &(usize, Rat)| -> Rat {
        (&b.1 - &a.1) / Rat::from_integer(Int::from(b.0 as i64 - a.0 as i64))
    };
    let mut hull: Vec<(usize, Rat)> = Vec::new();
    for pt in points {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            if slope(a, b) >= slope(b, &pt) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| (slope(&w[0], &w[1]), w[1].0 - w[0].0))
        .collect();
    Ok(NewtonPolygon {
        vertices: hull,
        segments,
    })
}

// ---------------------------------------------------------------------------
// Hensel lifting
// ---------------------------------------------------------------------------

/// A p-adic number known to finitely many significant digits:
/// `p^valuation * unit` with `unit` determined modulo `p^precision`.
#[derive(Clone, Debug, PartialEq)]
pub struct PadicApprox {
    p: u64,
    valuation: Option<Rat>,
    unit: Int,
    precision: u32,
}

impl PadicApprox {
    /// Build from a residue `r mod p^digits`. A zero residue yields the zero
    /// approximation (valuation infinity, recorded as `None`).
    pub fn from_residue(p: u64, r: &Int, digits: u32) -> Self {
        debug_assert!(digits >= 1);
        let pb = Int::from(p);
        let pn = pb.pow(digits);
        let r = r.mod_floor(&pn);
        if r.is_zero() {
            return PadicApprox {
                p,
                valuation: None,
                unit: Int::zero(),
                precision: digits,
            };
        }
        let v = int_valuation(&r, &pb);
        PadicApprox {
            p,
            valuation: Some(Rat::from_integer(Int::from(v))),
            unit: (&r / pb.pow(v)).mod_floor(&pb.pow(digits - v)),
            precision: digits - v,
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `None` encodes valuation infinity (the zero approximation).
    pub fn valuation(&self) -> Option<&Rat> {
        self.valuation.as_ref()
    }

    pub fn unit_part(&self) -> &Int {
        &self.unit
    }

    /// Number of significant p-adic digits of the unit part.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// The value `p^v * unit` as an integer residue, for integral `v >= 0`.
    pub fn residue(&self) -> Int {
        match &self.valuation {
            None => Int::zero(),
            Some(v) => {
                assert!(v.is_integer() && !v.is_negative(), "integral residue only");
                let e = u32::try_from(v.to_integer()).expect("small valuation");
                Int::from(self.p).pow(e) * &self.unit
            }
        }
    }
}

/// Lift a simple root of `f` modulo `p` to a root modulo `p^precision` by
/// Newton iteration. Requires `f(r0) ≡ 0 (mod p)` and `f'(r0)` a unit.
pub fn hensel_lift(
    f: &UniPoly,
    p: u64,
    r0: &Int,
    precision: u32,
) -> Result<PadicApprox, ArithError> {
    if !is_prime_u64(p) {
        return Err(ArithError::InvalidInput("p must be prime"));
    }
    if precision == 0 {
        return Err(ArithError::InvalidInput("precision must be at least 1"));
    }
    if f.is_zero() {
        return Err(ArithError::InvalidInput("cannot lift a root of zero"));
    }
    let (c, _) = f.primitive_integer();
    let dc = derive(&c);
    let pb = Int::from(p);
    if !eval_int(&c, r0).mod_floor(&pb).is_zero() {
        return Err(ArithError::InvalidInput("seed is not a root mod p"));
    }
    if eval_int(&dc, r0).mod_floor(&pb).is_zero() {
        return Err(ArithError::InvalidInput(
            "seed is not a simple root mod p (Hensel condition fails)",
        ));
    }
    let modulus = pb.pow(precision);
    let mut r = r0.mod_floor(&modulus);
    for _ in 0..64 {
        let fr = eval_int(&c, &r).mod_floor(&modulus);
        if fr.is_zero() {
            break;
        }
        let d = eval_int(&dc, &r).mod_floor(&modulus);
        let di = inv_mod(&d, &modulus).expect("derivative is a unit");
        r = (r - fr * di).mod_floor(&modulus);
    }
    debug_assert!(eval_int(&c, &r).mod_floor(&modulus).is_zero());
    Ok(PadicApprox::from_residue(p, &r, precision))
}

fn eval_int(c: &[Int], x: &Int) -> Int {
    let mut acc = Int::zero();
    for a in c.iter().rev() {
        acc = acc * x + a;
    }
    acc
}

fn derive(c: &[Int]) -> Vec<Int> {
    if c.len() <= 1 {
        return Vec::new();
    }
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| a * Int::from(i as i64))
        .collect()
}

// ---------------------------------------------------------------------------
// Value classes
// ---------------------------------------------------------------------------

/// The residue disc `center + p^depth Z_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueDisc {
    p: u64,
    center: Int,
    depth: u32,
}

impl ResidueDisc {
    pub fn new(p: u64, center: &Int, depth: u32) -> Result<Self, ArithError> {
        if !is_prime_u64(p) {
            return Err(ArithError::InvalidInput("p must be prime"));
        }
        let pk = Int::from(p).pow(depth);
        Ok(ResidueDisc {
            p,
            center: center.mod_floor(&pk),
            depth,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn center(&self) -> &Int {
        &self.center
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }
}

/// Region of `P^1(Q_p)` over which a map image is computed: the affine points
/// `R1 = [Z_p : 1]`, the points near infinity `R2 = [1 : p Z_p]`, or a single
/// affine residue disc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PadicRegion {
    R1,
    R2,
    Disc(ResidueDisc),
}

/// A single value class: every value in the class has valuation `v` and unit
/// part congruent to `u` modulo `p^m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ValueClass {
    pub v: i64,
    pub u: Int,
}

/// Finite description of a set of p-adic values; see the module docs for the
/// marker conventions.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueClassSet {
    p: u64,
    m: u32,
    classes: BTreeSet<ValueClass>,
    contains_zero: bool,
    contains_infinity: bool,
    high: Option<i64>,
    low: Option<i64>,
    complete: bool,
}

impl ValueClassSet {
    /// Assemble a set from parts, validating the class invariants.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        p: u64,
        m: u32,
        classes: impl IntoIterator<Item = ValueClass>,
        contains_zero: bool,
        contains_infinity: bool,
        high: Option<i64>,
        low: Option<i64>,
        complete: bool,
    ) -> Result<Self, ArithError> {
        if !is_prime_u64(p) {
            return Err(ArithError::InvalidInput("p must be prime"));
        }
        if m == 0 {
            return Err(ArithError::InvalidInput("unit modulus exponent must be >= 1"));
        }
        let pm = Int::from(p).pow(m);
        let mut set = BTreeSet::new();
        for c in classes {
            if c.u.is_negative() || c.u >= pm || c.u.mod_floor(&Int::from(p)).is_zero() {
                return Err(ArithError::InvalidInput(
                    "unit residue must lie in [1, p^m) and be coprime to p",
                ));
            }
            set.insert(c);
        }
        Ok(ValueClassSet {
            p,
            m,
            classes: set,
            contains_zero,
            contains_infinity,
            high,
            low,
            complete,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn unit_modulus_exponent(&self) -> u32 {
        self.m
    }

    pub fn classes(&self) -> impl Iterator<Item = &ValueClass> {
        self.classes.iter()
    }

    /// Value 0 (valuation infinity) is certified attained.
    pub fn contains_zero(&self) -> bool {
        self.contains_zero
    }

    /// The point at infinity (a pole) is certified attained.
    pub fn contains_infinity(&self) -> bool {
        self.contains_infinity
    }

    /// Marker: every class with valuation at or above this may occur.
    pub fn high_threshold(&self) -> Option<i64> {
        self.high
    }

    /// Marker: every class with valuation at or below this may occur.
    pub fn low_threshold(&self) -> Option<i64> {
        self.low
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Whether the explicit class `(v, u)` is present, comparing units modulo
    /// `p^min(self.m, m)`.
    pub fn has_class(&self, v: i64, u: &Int, m: u32) -> bool {
        let mm = self.m.min(m);
        let pm = Int::from(self.p).pow(mm);
        let target = u.mod_floor(&pm);
        self.classes
            .iter()
            .any(|c| c.v == v && c.u.mod_floor(&pm) == target)
    }

    /// Conservative membership: could a value with this data lie in the set?
    pub fn may_contain(&self, v: i64, u: &Int, m: u32) -> bool {
        self.high.map_or(false, |h| v >= h)
            || self.low.map_or(false, |l| v <= l)
            || self.has_class(v, u, m)
    }

    /// Sound disjointness: returns `true` only when both sets are complete
    /// and no value (explicit, marker-covered, zero, or pole) can be common.
    pub fn provably_disjoint(&self, other: &ValueClassSet) -> bool {
        assert_eq!(self.p, other.p, "disjointness requires matching primes");
        if !self.complete || !other.complete {
            return false;
        }
        // Value 0 sits above any high marker, the pole below any low marker.
        let zero_a = self.contains_zero || self.high.is_some();
        let zero_b = other.contains_zero || other.high.is_some();
        if zero_a && zero_b {
            return false;
        }
        let inf_a = self.contains_infinity || self.low.is_some();
        let inf_b = other.contains_infinity || other.low.is_some();
        if inf_a && inf_b {
            return false;
        }
        if let (Some(h), Some(l)) = (self.high, other.low) {
            if l >= h {
                return false;
            }
        }
        if let (Some(h), Some(l)) = (other.high, self.low) {
            if l >= h {
                return false;
            }
        }
        for c in &self.classes {
            if other.may_contain(c.v, &c.u, self.m) {
                return false;
            }
        }
        for c in &other.classes {
            if self.may_contain(c.v, &c.u, other.m) {
                return false;
            }
        }
        true
    }

    /// Shift all valuations by `dv` and multiply all units by `uf` (a unit),
    /// i.e. multiply the underlying value set by `p^dv * uf`.
    fn shifted(mut self, dv: i64, uf: &Int) -> Self {
        let pm = Int::from(self.p).pow(self.m);
        let uf = uf.mod_floor(&pm);
        self.classes = self
            .classes
            .into_iter()
            .map(|c| ValueClass {
                v: c.v + dv,
                u: (c.u * &uf).mod_floor(&pm),
            })
            .collect();
        self.high = self.high.map(|h| h + dv);
        self.low = self.low.map(|l| l + dv);
        self
    }
}

struct SetBuilder {
    p: u64,
    m: u32,
    classes: BTreeSet<ValueClass>,
    contains_zero: bool,
    contains_infinity: bool,
    high: Option<i64>,
    low: Option<i64>,
    complete: bool,
}

impl SetBuilder {
    fn new(p: u64, m: u32) -> Self {
        SetBuilder {
            p,
            m,
            classes: BTreeSet::new(),
            contains_zero: false,
            contains_infinity: false,
            high: None,
            low: None,
            complete: true,
        }
    }

    fn emit(&mut self, v: i64, unit: Int) {
        self.classes.insert(ValueClass { v, u: unit });
    }

    fn add_high(&mut self, t: i64) {
        self.high = Some(self.high.map_or(t, |h| h.min(t)));
    }

    fn add_low(&mut self, t: i64) {
        self.low = Some(self.low.map_or(t, |l| l.max(t)));
    }

    fn finish(mut self) -> ValueClassSet {
        // Explicit classes inside a marker region are absorbed by it.
        let (high, low) = (self.high, self.low);
        self.classes.retain(|c| {
            high.map_or(true, |h| c.v < h) && low.map_or(true, |l| c.v > l)
        });
        ValueClassSet {
            p: self.p,
            m: self.m,
            classes: self.classes,
            contains_zero: self.contains_zero,
            contains_infinity: self.contains_infinity,
            high,
            low,
            complete: self.complete,
        }
    }
}

/// Minimum valuation of the constant term and of the tail (degree >= 1)
/// coefficients; `None` where all relevant coefficients vanish.
fn stats(c: &[Int], p: u64) -> (Option<i64>, Option<i64>) {
    let v0 = c.first().and_then(|x| ival(x, p));
    let vt = c[1..].iter().filter_map(|x| ival(x, p)).min();
    (v0, vt)
}

/// Coefficients of `g(center + p^scale * t)` from those of `g(t)`.
fn subdivide(c: &[Int], center: &Int, scale: u32, p: u64) -> Vec<Int> {
    let mut a = c.to_vec();
    let n = a.len();
    // Taylor shift by `center` via repeated synthetic division.
    if n >= 2 {
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                a[j] = &a[j] + center * &a[j + 1];
            }
        }
    }
    let step = Int::from(p).pow(scale);
    let mut pw = Int::one();
    for x in a.iter_mut().skip(1) {
        pw *= &step;
        *x *= &pw;
    }
    a
}

/// True when the strong Hensel criterion certifies a `Z_p` root of `g` inside
/// the disc the coefficients are written on.
fn certify_root(c: &[Int], p: u64) -> bool {
    // Strip the p-power content first: on a deep disc every coefficient of
    // the substituted polynomial carries a large power of p, which would
    // otherwise mask the simple-root condition.
    let vmin = match c.iter().filter_map(|x| ival(x, p)).min() {
        None => return false,
        Some(v) => v as u32,
    };
    let pv = Int::from(p).pow(vmin);
    let c: Vec<Int> = c.iter().map(|x| x / &pv).collect();
    let c = &c[..];
    let d = derive(c);
    for r in 0..p {
        let ri = Int::from(r);
        let g = eval_int(c, &ri);
        if g.is_zero() {
            return true;
        }
        let dg = eval_int(&d, &ri);
        let vg = ival(&g, p).expect("nonzero");
        match ival(&dg, p) {
            None => continue,
            Some(vd) => {
                if vg > 2 * vd {
                    return true;
                }
            }
        }
    }
    false
}

struct PolyEngine {
    p: u64,
    m: u32,
    bound: i64,
    limit: u32,
}

impl PolyEngine {
    fn analyze(&self, g: &[Int], level: u32, out: &mut SetBuilder) {
        let (v0, vt) = stats(g, self.p);
        let vt = match vt {
            // Constant on the whole disc.
            None => {
                let v = v0.expect("nonzero polynomial");
                out.emit(v, unit_mod(&g[0], self.p, self.m));
                return;
            }
            Some(t) => t,
        };
        match v0 {
            Some(v) if vt >= v + self.m as i64 => {
                // The constant term dominates: one class for the whole disc.
                out.emit(v, unit_mod(&g[0], self.p, self.m));
                return;
            }
            Some(v) => {
                let lo = v.min(vt);
                if lo > self.bound {
                    out.add_high(lo);
                    if certify_root(g, self.p) {
                        out.contains_zero = true;
                    }
                    return;
                }
            }
            None => {
                // The disc center is an exact root.
                out.contains_zero = true;
                if vt > self.bound {
                    out.add_high(vt);
                    return;
                }
            }
        }
        if level >= self.limit {
            out.complete = false;
            out.add_high(v0.map_or(vt, |v| v.min(vt)));
            if certify_root(g, self.p) {
                out.contains_zero = true;
            }
            return;
        }
        for r in 0..self.p {
            let child = subdivide(g, &Int::from(r), 1, self.p);
            self.analyze(&child, level + 1, out);
        }
    }
}

/// All classes `(v_p(f(x)), f(x)/p^v mod p^m)` for `x in Z_p`. Explicit
/// classes are exact for valuations up to `depth`; deeper behavior is
/// summarized by the high marker.
pub fn value_classes(f: &UniPoly, p: u64, m: u32, depth: u32) -> ValueClassSet {
    assert!(is_prime_u64(p), "p must be prime");
    assert!(m >= 1, "unit modulus exponent must be >= 1");
    assert!(!f.is_zero(), "value classes of the zero polynomial");
    let (c, q) = f.primitive_integer();
    let qv = padic_valuation(&q, p).expect("nonzero scalar");
    let uq = unit_mod(q.numer(), p, m) * inv_mod(&unit_mod(q.denom(), p, m), &Int::from(p).pow(m))
        .expect("unit denominator");
    let engine = PolyEngine {
        p,
        m,
        bound: depth as i64 - qv,
        limit: depth + m + 16,
    };
    let mut out = SetBuilder::new(p, m);
    engine.analyze(&c, 0, &mut out);
    out.finish().shifted(qv, &uq)
}

struct QuotEngine {
    p: u64,
    m: u32,
    bound_hi: i64,
    bound_lo: i64,
    limit: u32,
}

impl QuotEngine {
    fn dominant(&self, v0: Option<i64>, vt: Option<i64>) -> Option<i64> {
        match (v0, vt) {
            (Some(v), None) => Some(v),
            (Some(v), Some(t)) if t >= v + self.m as i64 => Some(v),
            _ => None,
        }
    }

    fn analyze(
        &self,
        g: &[Int],
        h: &[Int],
        level: u32,
        out: &mut SetBuilder,
    ) -> Result<(), ArithError> {
        let (gv0, gvt) = stats(g, self.p);
        let (hv0, hvt) = stats(h, self.p);
        if gv0.is_none() && hv0.is_none() {
            return Err(ArithError::Integrity(
                "numerator and denominator share a root",
            ));
        }
        let g_dom = self.dominant(gv0, gvt);
        let h_dom = self.dominant(hv0, hvt);
        if let (Some(gv), Some(hv)) = (g_dom, h_dom) {
            let pm = Int::from(self.p).pow(self.m);
            let u = unit_mod(&g[0], self.p, self.m)
                * inv_mod(&unit_mod(&h[0], self.p, self.m), &pm).expect("unit");
            out.emit(gv - hv, u.mod_floor(&pm));
            return Ok(());
        }
        let gmin = match (gv0, gvt) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("nonzero polynomial"),
        };
        let hmin = match (hv0, hvt) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("nonzero polynomial"),
        };
        if let Some(hv) = h_dom {
            // Denominator is pinned on the disc, so only the numerator varies.
            if gv0.is_none() {
                out.contains_zero = true;
            }
            if gmin - hv > self.bound_hi {
                out.add_high(gmin - hv);
                if certify_root(g, self.p) {
                    out.contains_zero = true;
                }
                return Ok(());
            }
        }
        if let Some(gv) = g_dom {
            if hv0.is_none() {
                out.contains_infinity = true;
            }
            if gv - hmin < self.bound_lo {
                out.add_low(gv - hmin);
                if certify_root(h, self.p) {
                    out.contains_infinity = true;
                }
                return Ok(());
            }
        }
        if level >= self.limit {
            out.complete = false;
            if let Some(hv) = h_dom {
                out.add_high(gmin - hv);
            } else if let Some(gv) = g_dom {
                out.add_low(gv - hmin);
            } else {
                // No sound bound on either side: cover everything.
                out.add_high(i64::MIN / 2);
                out.add_low(i64::MAX / 2);
            }
            return Ok(());
        }
        for r in 0..self.p {
            let cg = subdivide(g, &Int::from(r), 1, self.p);
            let ch = subdivide(h, &Int::from(r), 1, self.p);
            self.analyze(&cg, &ch, level + 1, out)?;
        }
        Ok(())
    }
}

/// Value classes of `map` over a region of `P^1(Q_p)`, with numerator and
/// denominator analyzed disc-by-disc in lockstep so the quotient classes are
/// exact rather than a free product of the two coordinate images.
pub fn map_image_classes(
    map: &RationalMapP1<Rat>,
    p: u64,
    region: &PadicRegion,
    m: u32,
    depth: u32,
) -> Result<ValueClassSet, ArithError> {
    if !is_prime_u64(p) {
        return Err(ArithError::InvalidInput("p must be prime"));
    }
    if m == 0 {
        return Err(ArithError::InvalidInput("unit modulus exponent must be >= 1"));
    }
    let (c1, q1) = map.num().primitive_integer();
    let (c2, q2) = map.den().primitive_integer();
    if c1.is_empty() {
        // The zero map: a single value for every region.
        return ValueClassSet::from_parts(p, m, [], true, false, None, None, true);
    }
    let (g, h) = match region {
        PadicRegion::R1 => (c1, c2),
        PadicRegion::R2 => {
            // Points [1 : p s]; substitute t = 1/(p s) after homogenizing both
            // coordinates to the common degree d.
            let d = map.num().degree().unwrap_or(0).max(map.den().degree().unwrap_or(0));
            let rev = |c: &[Int]| -> Vec<Int> {
                let mut out = vec![Int::zero(); d + 1];
                for (i, x) in c.iter().enumerate() {
                    out[d - i] = x.clone();
                }
                while out.last().map_or(false, |x| x.is_zero()) {
                    out.pop();
                }
                out
            };
            (
                subdivide(&rev(&c1), &Int::zero(), 1, p),
                subdivide(&rev(&c2), &Int::zero(), 1, p),
            )
        }
        PadicRegion::Disc(disc) => {
            if disc.prime() != p {
                return Err(ArithError::InvalidInput("residue disc prime mismatch"));
            }
            (
                subdivide(&c1, disc.center(), disc.depth(), p),
                subdivide(&c2, disc.center(), disc.depth(), p),
            )
        }
    };
    let qv = padic_valuation(&(&q1 / &q2), p).expect("nonzero scalar");
    let pm = Int::from(p).pow(m);
    let s = &q1 / &q2;
    let uq = (unit_mod(s.numer(), p, m)
        * inv_mod(&unit_mod(s.denom(), p, m), &pm).expect("unit"))
    .mod_floor(&pm);
    let engine = QuotEngine {
        p,
        m,
        bound_hi: depth as i64 - qv,
        bound_lo: -(depth as i64) - qv,
        limit: 2 * depth + m + 24,
    };
    let mut out = SetBuilder::new(p, m);
    engine.analyze(&g, &h, 0, &mut out)?;
    Ok(out.finish().shifted(qv, &uq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio, Poly};

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(&ratio(-102400, 3), 5), Some(2));
        assert_eq!(padic_valuation(&ratio(20480, 243), 5), Some(1));
        assert_eq!(padic_valuation(&ratio(20480, 243), 3), Some(-5));
        assert_eq!(padic_valuation(&rat(0), 7), None);
        assert_eq!(padic_valuation(&ratio(1, 8), 2), Some(-3));
    }

    #[test]
    fn newton_polygon_examples() {
        // x^2 - 5 at p = 5: one segment of slope -1/2.
        let np = newton_polygon(&up(&[-5, 0, 1]), 5).unwrap();
        assert_eq!(np.vertices(), &[(0, rat(1)), (2, rat(0))]);
        assert_eq!(np.segments(), &[(ratio(-1, 2), 2)]);
        assert_eq!(np.root_valuations(), vec![(ratio(1, 2), 2)]);
        // x^2 - 1 at p = 3: slope 0.
        let np = newton_polygon(&up(&[-1, 0, 1]), 3).unwrap();
        assert_eq!(np.segments(), &[(rat(0), 2)]);
        // t^2 + 250 t + 3125 at p = 5: the middle point (1, 3) lies above the
        // chord from (0, 5) to (2, 0) (height 5/2 at index 1), so the hull is
        // a single segment and both roots are ramified with valuation 5/2.
        let np = newton_polygon(&up(&[3125, 250, 1]), 5).unwrap();
        assert_eq!(np.vertices(), &[(0, rat(5)), (2, rat(0))]);
        assert_eq!(np.segments(), &[(ratio(-5, 2), 2)]);
        // x^3 + 5x + 125 at p = 5: two segments, slopes -2 then -1/2.
        let np = newton_polygon(&up(&[125, 5, 0, 1]), 5).unwrap();
        assert_eq!(np.vertices(), &[(0, rat(3)), (1, rat(1)), (3, rat(0))]);
        assert_eq!(np.segments(), &[(rat(-2), 1), (ratio(-1, 2), 2)]);
        // Lengths sum to deg - (lowest nonzero index): 7x^2 + x^3 at p = 7.
        let np = newton_polygon(&up(&[0, 0, 7, 1]), 7).unwrap();
        assert_eq!(np.segments(), &[(rat(-1), 1)]);
        assert!(newton_polygon(&up(&[1, 1]), 6).is_err());
        assert!(newton_polygon(&UniPoly::zero(), 5).is_err());
    }

    #[test]
    fn hensel_examples() {
        // sqrt(2) in Z_7: 3 -> 108 mod 343.
        let r = hensel_lift(&up(&[-2, 0, 1]), 7, &Int::from(3), 3).unwrap();
        assert_eq!(r.residue(), Int::from(108));
        assert_eq!(
            (Int::from(108).pow(2) - Int::from(2)).mod_floor(&Int::from(343)),
            Int::zero()
        );
        // x - 5 at p = 3: the root itself.
        let r = hensel_lift(&up(&[-5, 1]), 3, &Int::from(2), 4).unwrap();
        assert_eq!(r.residue(), Int::from(5));
        // sqrt(-1) in Z_5: 2 -> 7 mod 25.
        let r = hensel_lift(&up(&[1, 0, 1]), 5, &Int::from(2), 2).unwrap();
        assert_eq!(r.residue(), Int::from(7));
        assert_eq!(r.valuation(), Some(&rat(0)));
        // Non-simple seed: x^2 - 2 at p = 2 has f'(0) = 0.
        assert!(hensel_lift(&up(&[-2, 0, 1]), 2, &Int::from(0), 3).is_err());
        // Not a root at all.
        assert!(hensel_lift(&up(&[-2, 0, 1]), 7, &Int::from(1), 3).is_err());
    }

    #[test]
    fn hensel_refinement_monotonic() {
        let f = up(&[-2, 0, 1]);
        let mut prev: Option<Int> = None;
        for k in 1..=8u32 {
            let r = hensel_lift(&f, 7, &Int::from(3), k).unwrap().residue();
            if let Some(p) = prev {
                let pk = Int::from(7).pow(k - 1);
                assert_eq!(r.mod_floor(&pk), p.mod_floor(&pk));
            }
            let pk = Int::from(7).pow(k);
            assert!((r.pow(2) - Int::from(2)).mod_floor(&pk).is_zero());
            prev = Some(r);
        }
    }

    #[test]
    fn value_classes_no_root() {
        // x^2 + 1 at p = 3: -1 is a non-residue, so valuation 0 only.
        let s = value_classes(&up(&[1, 0, 1]), 3, 1, 6);
        let got: Vec<(i64, Int)> = s.classes().map(|c| (c.v, c.u.clone())).collect();
        assert_eq!(got, vec![(0, Int::from(1)), (0, Int::from(2))]);
        assert!(s.is_complete());
        assert!(!s.contains_zero());
        assert_eq!(s.high_threshold(), None);
    }

    #[test]
    fn value_classes_identity() {
        // f = x at p = 5: every class up to the depth, then the marker.
        let s = value_classes(&up(&[0, 1]), 5, 1, 3);
        assert!(s.contains_zero());
        let t = s.high_threshold().expect("marker");
        assert!(t > 3);
        for v in 0..=3i64 {
            for u in 1..5i64 {
                assert!(s.has_class(v, &Int::from(u), 1), "missing ({v}, {u})");
            }
        }
        assert!(s.is_complete());
    }

    #[test]
    fn value_classes_irrational_root() {
        // x^2 + 1 at p = 5: roots +-2 + ... exist in Z_5, so every valuation
        // occurs and the root is certified without being hit exactly.
        let s = value_classes(&up(&[1, 0, 1]), 5, 1, 4);
        assert!(s.contains_zero());
        assert!(s.high_threshold().is_some());
        for v in 0..=4i64 {
            assert!(s.classes().any(|c| c.v == v), "no class at valuation {v}");
        }
        assert!(s.is_complete());
    }

    #[test]
    fn value_classes_constant_and_scalar() {
        let s = value_classes(&up(&[12]), 2, 2, 4);
        let got: Vec<(i64, Int)> = s.classes().map(|c| (c.v, c.u.clone())).collect();
        assert_eq!(got, vec![(2, Int::from(3))]);
        // Rational scalars shift valuations: classes of x/5 are those of x
        // shifted down by one.
        let a = value_classes(&up(&[0, 1]), 5, 1, 3);
        let b = value_classes(&Poly::new(vec![rat(0), ratio(1, 5)]), 5, 1, 3);
        for c in a.classes() {
            assert!(b.has_class(c.v - 1, &c.u, 1));
        }
        // The marker stays above the requested depth after the shift.
        assert!(b.high_threshold().unwrap() > 3);
    }

    /// Brute-force oracle: classes of `f` over `Z_p` read off from exact
    /// evaluation on all residues mod `p^K`; certain for valuations `<= K - m`.
    fn brute_classes(f: &UniPoly, p: u64, m: u32, kk: u32) -> (BTreeSet<(i64, Int)>, bool) {
        let (c, q) = f.primitive_integer();
        assert!(q.is_integer() && q.is_one(), "test polys are primitive");
        let pk = Int::from(p).pow(kk);
        let mut out = BTreeSet::new();
        let mut deep = false;
        let mut x = Int::zero();
        while x < pk {
            let y = eval_int(&c, &x);
            match ival(&y, p) {
                None => deep = true,
                Some(v) if v + m as i64 > kk as i64 => deep = true,
                Some(v) => {
                    out.insert((v, unit_mod(&y, p, m)));
                }
            }
            x += 1;
        }
        (out, deep)
    }

    #[test]
    fn value_classes_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for &(p, depth) in &[(2u64, 4u32), (3, 4), (5, 3)] {
            for m in 1..=2u32 {
                for _ in 0..12 {
                    let deg = rng.gen_range(1..=4);
                    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
                    if c[deg] == 0 {
                        c[deg] = 1;
                    }
                    let f = up(&c);
                    let (g, _) = f.primitive_integer();
                    let f = Poly::new(g.iter().map(|x| Rat::from_integer(x.clone())).collect());
                    let s = value_classes(&f, p, m, depth);
                    assert!(s.is_complete(), "{c:?} mod {p}");
                    let (oracle, deep) = brute_classes(&f, p, m, depth + m + 2);
                    let window = s.high_threshold().unwrap_or(i64::MAX).min(depth as i64 + 1);
                    // Exact agreement strictly below the marker window.
                    for (v, u) in &oracle {
                        if *v < window {
                            assert!(s.has_class(*v, u, m), "{c:?} mod {p}: missing ({v}, {u})");
                        } else {
                            assert!(s.may_contain(*v, u, m), "{c:?} mod {p}: uncovered ({v}, {u})");
                        }
                    }
                    for cl in s.classes() {
                        if cl.v < window {
                            assert!(
                                oracle.contains(&(cl.v, cl.u.clone())),
                                "{c:?} mod {p}: spurious ({}, {})",
                                cl.v,
                                cl.u
                            );
                        }
                    }
                    if deep {
                        assert!(
                            s.high_threshold().is_some(),
                            "{c:?} mod {p}: deep values need a marker"
                        );
                    }
                }
            }
        }
    }

    fn jmap() -> RationalMapP1<Rat> {
        let q = up(&[3125, 250, 1]);
        RationalMapP1::new(q.mul(&q).mul(&q), Poly::monomial(rat(1), 5)).unwrap()
    }

    #[test]
    fn map_image_identity_matches_polynomial() {
        let map = RationalMapP1::new(up(&[0, 1]), up(&[1])).unwrap();
        let a = map_image_classes(&map, 3, &PadicRegion::R1, 2, 4).unwrap();
        let b = value_classes(&up(&[0, 1]), 3, 2, 4);
        assert_eq!(a, b);
        // Constant denominator: same as the classes of the scaled polynomial.
        let map = RationalMapP1::new(up(&[1, 0, 1]), up(&[3])).unwrap();
        let a = map_image_classes(&map, 5, &PadicRegion::R1, 1, 4).unwrap();
        let b = value_classes(&up(&[1, 0, 1]).scale(&ratio(1, 3)), 5, 1, 4);
        assert_eq!(a, b);
    }

    #[test]
    fn map_image_pole() {
        // 1/x at p = 5: mirror image of the identity, pole at 0.
        let map = RationalMapP1::new(up(&[1]), up(&[0, 1])).unwrap();
        let s = map_image_classes(&map, 5, &PadicRegion::R1, 1, 3).unwrap();
        assert!(s.contains_infinity());
        assert!(!s.contains_zero());
        let t = s.low_threshold().expect("pole marker");
        assert!(t < -3);
        for v in 0..=3i64 {
            for u in 1..5i64 {
                let ui = inv_mod(&Int::from(u), &Int::from(5)).unwrap();
                assert!(s.has_class(-v, &ui, 1), "missing ({}, {ui})", -v);
            }
        }
        assert!(s.is_complete());
    }

    #[test]
    fn map_image_shifted_square() {
        // x^2 / 3 at p = 3: valuations are 2 v_3(x) - 1, all odd >= -1.
        let map = RationalMapP1::new(up(&[0, 0, 1]), up(&[3])).unwrap();
        let s = map_image_classes(&map, 3, &PadicRegion::R1, 1, 5).unwrap();
        assert!(s.contains_zero());
        for c in s.classes() {
            assert_eq!(c.v.rem_euclid(2), 1, "even valuation {}", c.v);
            assert_eq!(c.u, Int::from(1), "non-square unit");
        }
        assert!(s.has_class(-1, &Int::from(1), 1));
        assert!(!s.has_class(0, &Int::from(1), 1));
        assert!(!s.has_class(-1, &Int::from(2), 1));
    }

    #[test]
    fn map_image_scaling_invariance() {
        let num = up(&[1, 0, 1]);
        let den = up(&[0, 1]);
        let a = map_image_classes(
            &RationalMapP1::new(num.clone(), den.clone()).unwrap(),
            5,
            &PadicRegion::R1,
            2,
            4,
        )
        .unwrap();
        let lam = ratio(7, 3);
        let b = map_image_classes(
            &RationalMapP1::new(num.scale(&lam), den.scale(&lam)).unwrap(),
            5,
            &PadicRegion::R1,
            2,
            4,
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn map_image_restricted_disc() {
        // On the discs with v_5(t) = 2 exactly, the quadratic inside the
        // numerator has valuation 4 (the t^2 term dominates 250 t and 3125),
        // so the image valuation is 3*4 - 5*2 = 2.
        let map = jmap();
        for r in 1..5u64 {
            let disc = ResidueDisc::new(5, &Int::from(25 * r), 3).unwrap();
            let s = map_image_classes(&map, 5, &PadicRegion::Disc(disc), 1, 6).unwrap();
            assert!(s.is_complete());
            assert!(s.high_threshold().is_none() && s.low_threshold().is_none());
            assert!(s.classes().count() >= 1);
            for c in s.classes() {
                assert_eq!(c.v, 2, "center 25*{r}");
            }
        }
    }

    #[test]
    fn map_image_near_infinity() {
        // Degree 6 over degree 5: a simple pole at t = infinity, so on R2 the
        // image valuations are -1 - v_5(s) <= -1.
        let s = map_image_classes(&jmap(), 5, &PadicRegion::R2, 1, 4).unwrap();
        assert!(s.is_complete());
        assert!(s.contains_infinity());
        assert!(!s.contains_zero());
        assert!(s.classes().any(|c| c.v == -1));
        for c in s.classes() {
            assert!(c.v <= -1, "valuation {} on R2", c.v);
        }
        assert!(s.low_threshold().unwrap() < -4);
    }

    #[test]
    fn disjointness_logic() {
        let a = value_classes(&up(&[1, 0, 1]), 3, 1, 6); // valuation 0 only
        let b = value_classes(&up(&[3, 0, 3]), 3, 1, 6); // valuation 1 only
        assert!(a.provably_disjoint(&b));
        assert!(b.provably_disjoint(&a));
        assert!(!a.provably_disjoint(&a));
        // Markers block disjointness claims on the covered side.
        let c = value_classes(&up(&[0, 1]), 3, 1, 6); // everything, marker + zero
        assert!(!a.provably_disjoint(&c));
        assert!(!c.provably_disjoint(&b));
        // Incomplete sets never certify.
        let inc = ValueClassSet::from_parts(3, 1, [], false, false, None, None, false).unwrap();
        assert!(!a.provably_disjoint(&inc));
    }

    #[test]
    fn from_parts_validation() {
        assert!(ValueClassSet::from_parts(
            5,
            1,
            [ValueClass { v: 0, u: Int::from(5) }],
            false,
            false,
            None,
            None,
            true
        )
        .is_err());
        assert!(ValueClassSet::from_parts(4, 1, [], false, false, None, None, true).is_err());
        assert!(ValueClassSet::from_parts(5, 0, [], false, false, None, None, true).is_err());
    }
}
