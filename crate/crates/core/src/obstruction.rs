//! The local obstruction method: the p-adic value classes of the
//! j-invariant j = 12^3 b^3 / c^10 over all p-adically primitive solutions
//! of a^2 + b^3 = c^10, and the intersection test against the p-adic image
//! of a rational map to the j-line.
//!
//! Structure used throughout: if p divided both b and c it would divide
//! a^2 = c^10 - b^3 and hence a, contradicting primitivity, so b and c are
//! coprime in Z_p. The image therefore splits into three branches:
//! - b, c both units: v(j) = v_p(12^3), with solvability of
//!   a^2 = c^10 - b^3 decided by certified residue recursion;
//! - p | b (c a unit): v(j) = v_p(12^3) + 3 v_p(b), and
//!   c^10 - b^3 = (c^5)^2 (1 - b^3/c^10) is automatically a square;
//! - p | c (b a unit): v(j) = v_p(12^3) - 10 v_p(c), and solvability
//!   reduces to -b^3 being a unit square.

use crate::arith::intutil::{int_valuation, is_prime_u64};
use crate::arith::{ArithError, Field, Int, Rat, RationalMapP1};
use crate::padic::{
    map_image_classes, padic_valuation, PadicRegion, ValueClass, ValueClassSet,
};
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Inverse of a unit modulo pm.
fn inv_mod(u: &Int, pm: &Int) -> Int {
    let e = u.extended_gcd(pm);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(pm)
}

/// Nonnegative residues in [0, p^k) coprime to p.
fn units_mod(p: u64, k: u32) -> Vec<Int> {
    let pk = Int::from(p).pow(k);
    let pp = Int::from(p);
    let mut out = Vec::new();
    let mut u = Int::one();
    while u < pk {
        if !(&u % &pp).is_zero() {
            out.push(u.clone());
        }
        u += 1;
    }
    out
}

/// Whether a p-adic unit (given by any representative coprime to p) is a
/// square in Z_p: a quadratic residue mod p for odd p, and 1 mod 8 for 2.
fn unit_is_square(u: &Int, p: u64) -> bool {
    if p == 2 {
        u.mod_floor(&Int::from(8)) == Int::one()
    } else {
        let r = u.mod_floor(&Int::from(p));
        let mut x = Int::zero();
        let pp = Int::from(p);
        while x < pp {
            if (&x * &x).mod_floor(&pp) == r {
                return true;
            }
            x += 1;
        }
        false
    }
}

/// j-class emitted for unit parts beta of b and gamma of c at valuation v.
fn emit(
    out: &mut Vec<ValueClass>,
    v: i64,
    u1728: &Int,
    beta: &Int,
    gamma: &Int,
    pm: &Int,
) {
    let num = (u1728 * beta.modpow(&Int::from(3), pm)).mod_floor(pm);
    let den = gamma.modpow(&Int::from(10), pm);
    let u = (num * inv_mod(&den, pm)).mod_floor(pm);
    out.push(ValueClass { v, u });
}

/// Certified recursion on the unit-unit branch: decide for each residue
/// class of (b, c) whether a^2 = c^10 - b^3 has a solution. For odd p the
/// class of n = c^10 - b^3 is decided immediately (its unit is known mod p
/// unless v(n) >= k, in which case a unit partial derivative of n makes
/// every deeper class of n reachable, squares included). For p = 2 the
/// unit is needed mod 8, forcing at most three refinement levels.
fn unit_unit_classes(p: u64, m: u32, v1728: i64, u1728: &Int, pm: &Int) -> Vec<ValueClass> {
    let k0 = if p == 2 { m.max(3) } else { m.max(1) };
    let mut out = Vec::new();
    let mut stack: Vec<(Int, Int, u32)> = Vec::new();
    for b in units_mod(p, k0) {
        for c in units_mod(p, k0) {
            stack.push((b.clone(), c.clone(), k0));
        }
    }
    let pp = Int::from(p);
    while let Some((b, c, k)) = stack.pop() {
        let n = c.modpow(&Int::from(10), &pp.pow(4 * k)) - b.modpow(&Int::from(3), &pp.pow(4 * k));
        // 4k guard digits: enough to read off v(n) below k and its unit.
        let solvable = if n.is_zero() {
            true // a = 0, c^10 = b^3 exactly within the class
        } else {
            let v = int_valuation(&n, &pp);
            if v >= k {
                // Some partial derivative of n in (b, c) is a unit (3b^2
                // unless p = 3, else 10c^9), so deeper lifts reach every
                // class of p^k Z_p, squares included.
                true
            } else {
                let need = if p == 2 { 3 } else { 1 };
                if v + need <= k {
                    let unit = &n / pp.pow(v);
                    if v % 2 == 0 && unit_is_square(&unit, p) {
                        true
                    } else {
                        continue;
                    }
                } else {
                    // p = 2 with v in {k-2, k-1}: refine one level.
                    for i in 0..p {
                        for j in 0..p {
                            stack.push((
                                &b + &pp.pow(k) * Int::from(i),
                                &c + &pp.pow(k) * Int::from(j),
                                k + 1,
                            ));
                        }
                    }
                    continue;
                }
            }
        };
        if solvable {
            emit(&mut out, v1728, u1728, &b, &c, pm);
        }
    }
    out
}

/// The p-adic value classes of j = 12^3 b^3 / c^10 over all p-adically
/// primitive solutions of a^2 + b^3 = c^10.
///
/// Explicit classes cover |v| <= depth; the high marker at depth+1 covers
/// the deeper b-branch classes together with j = 0 (b = 0, a = c^5), and
/// the low marker at -depth-1 covers the deeper c-branch classes together
/// with the cusp value j = infinity (c = 0, (a, b) = (t^3, -t^2)).
pub fn primitive_j_classes(p: u64, m: u32, depth: u32) -> Result<ValueClassSet, ArithError> {
    if !is_prime_u64(p) {
        return Err(ArithError::InvalidInput("p must be prime"));
    }
    if m == 0 {
        return Err(ArithError::InvalidInput("unit modulus exponent must be >= 1"));
    }
    let pp = Int::from(p);
    let pm = pp.pow(m);
    let v1728 = int_valuation(&Int::from(1728), &pp) as i64;
    let u1728 = (Int::from(1728) / pp.pow(v1728 as u32)).mod_floor(&pm);
    let window = depth as i64;
    let mut classes: Vec<ValueClass> = Vec::new();

    if v1728.abs() <= window {
        classes.extend(unit_unit_classes(p, m, v1728, &u1728, &pm));
    }

    // p | b: every unit pair (beta, gamma) is realizable since
    // 1 - p^{3t} beta^3 / gamma^10 is a square (3t >= 3 covers p = 2).
    let betas = units_mod(p, m);
    let gammas = units_mod(p, m);
    let mut t = 1i64;
    while v1728 + 3 * t <= window {
        for beta in &betas {
            for gamma in &gammas {
                emit(&mut classes, v1728 + 3 * t, &u1728, beta, gamma, &pm);
            }
        }
        t += 1;
    }

    // p | c: realizable exactly when -b^3 is a unit square, a condition on
    // b mod p (odd p) or mod 8 (p = 2).
    let bk = if p == 2 { m.max(3) } else { m };
    let mut s = 1i64;
    while v1728 - 10 * s >= -window {
        for b in units_mod(p, bk) {
            if !unit_is_square(&-b.modpow(&Int::from(3), &pp.pow(bk + 2)), p) {
                continue;
            }
            for gamma in &gammas {
                emit(&mut classes, v1728 - 10 * s, &u1728, &b, gamma, &pm);
            }
        }
        s += 1;
    }

    ValueClassSet::from_parts(
        p,
        m,
        classes,
        true, // b = 0: a = +-c^5
        true, // c = 0: (a, b) = (t^3, -t^2)
        Some(window + 1),
        Some(-window - 1),
        true,
    )
}

/// Outcome of the local intersection test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Both images complete and provably non-intersecting.
    Disjoint,
    /// A common value class (or a shared 0 / infinity) was exhibited.
    Intersecting,
    /// Neither could be certified (incomplete image or marker overlap only).
    Inconclusive,
}

/// A certified common value of the two images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Class(ValueClass),
    Zero,
    Infinity,
}

/// Report of the local obstruction test at one prime.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionReport {
    pub p: u64,
    pub m: u32,
    pub map_image: ValueClassSet,
    pub triple_image: ValueClassSet,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
}

/// Union of two value-class sets over the same prime and unit modulus.
fn union(a: &ValueClassSet, b: &ValueClassSet) -> Result<ValueClassSet, ArithError> {
    if a.prime() != b.prime() || a.unit_modulus_exponent() != b.unit_modulus_exponent() {
        return Err(ArithError::InvalidInput("union requires matching parameters"));
    }
    let high = match (a.high_threshold(), b.high_threshold()) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    let low = match (a.low_threshold(), b.low_threshold()) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, y) => x.or(y),
    };
    ValueClassSet::from_parts(
        a.prime(),
        a.unit_modulus_exponent(),
        a.classes().chain(b.classes()).cloned(),
        a.contains_zero() || b.contains_zero(),
        a.contains_infinity() || b.contains_infinity(),
        high,
        low,
        a.is_complete() && b.is_complete(),
    )
}

/// Compute the p-adic image of a map to the j-line over all of P^1(Z_p)
/// (the two affine charts R1 and R2) and intersect it with the image of
/// the primitive triples.
pub fn obstruction_test(
    map: &RationalMapP1<Rat>,
    p: u64,
    m: u32,
    depth: u32,
) -> Result<ObstructionReport, ArithError> {
    let r1 = map_image_classes(map, p, &PadicRegion::R1, m, depth)?;
    let r2 = map_image_classes(map, p, &PadicRegion::R2, m, depth)?;
    let map_image = union(&r1, &r2)?;
    let triple_image = primitive_j_classes(p, m, depth)?;

    let mut witnesses = Vec::new();
    if map_image.contains_zero() && triple_image.contains_zero() {
        witnesses.push(Witness::Zero);
    }
    if map_image.contains_infinity() && triple_image.contains_infinity() {
        witnesses.push(Witness::Infinity);
    }
    for c in map_image.classes() {
        if triple_image.has_class(c.v, &c.u, m) {
            witnesses.push(Witness::Class(c.clone()));
        }
    }

    let verdict = if !witnesses.is_empty() {
        Verdict::Intersecting
    } else if map_image.provably_disjoint(&triple_image) {
        Verdict::Disjoint
    } else {
        Verdict::Inconclusive
    };
    Ok(ObstructionReport {
        p,
        m,
        map_image,
        triple_image,
        verdict,
        witnesses,
    })
}

/// Whether v_p(j) is consistent with the valuation pattern of the triple
/// image. At p = 5 (where v_5(12^3) = 0) the pattern is exactly
/// "divisible by at least one of 3 or 10"; for other primes membership in
/// the valuation projection of `primitive_j_classes` is evaluated.
pub fn v_divisibility_filter(j: &Rat, p: u64) -> Result<bool, ArithError> {
    if Field::is_zero(j) {
        return Err(ArithError::InvalidInput("j = 0 has no finite valuation"));
    }
    let v = padic_valuation(j, p).expect("nonzero");
    if p == 5 {
        return Ok(v.rem_euclid(3) == 0 || v.rem_euclid(10) == 0);
    }
    let depth = v.unsigned_abs().max(11) as u32;
    let set = primitive_j_classes(p, 1, depth)?;
    let hit = set.classes().any(|c| c.v == v);
    Ok(hit)
}
