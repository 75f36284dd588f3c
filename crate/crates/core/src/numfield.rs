//! Ramification analysis of number fields defined by monic integral
//! polynomials: Dedekind's criterion for p-maximality, enumeration of
//! quadratic fields unramified outside a prime set, and mod-p splitting
//! fingerprints used as a practical isomorphism test for small-degree
//! fields.

use crate::arith::{factorize, ArithError, Field, Int, Rat, UniPoly};
use crate::modp::ModPoly;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::Sign;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Ramification status of one prime in the field defined by a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeStatus {
    Ramified,
    Unramified,
    /// The equation order is not p-maximal and no sound rule applied; the
    /// prime may or may not ramify in the maximal order.
    Undetermined,
}

/// Outcome of Dedekind's criterion at a single prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DedekindOutcome {
    /// Whether the equation order Z[x]/(f) is maximal at p.
    pub p_maximal: bool,
    /// Whether f has a repeated factor mod p (ramification in the order).
    pub order_ramified: bool,
    /// Ramification of p in the field itself. Decided whenever the order is
    /// p-maximal, and otherwise by the parity of v_p(disc f) when odd.
    pub field_status: PrimeStatus,
}

/// Extract the integer coefficients of a monic integral polynomial.
fn monic_int_coeffs(f: &UniPoly) -> Result<Vec<Int>, ArithError> {
    let deg = f
        .degree()
        .ok_or(ArithError::InvalidInput("polynomial must be nonzero"))?;
    if deg < 1 {
        return Err(ArithError::InvalidInput("polynomial must be nonconstant"));
    }
    let mut out = Vec::with_capacity(deg + 1);
    for c in f.coeffs() {
        if !c.denom().is_one() {
            return Err(ArithError::InvalidInput(
                "polynomial must have integer coefficients",
            ));
        }
        out.push(c.numer().clone());
    }
    if !out[deg].is_one() {
        return Err(ArithError::InvalidInput("polynomial must be monic"));
    }
    Ok(out)
}

/// Lift a monic polynomial over F_p to integer coefficients in [0, p).
fn lift_ints(g: &ModPoly) -> Vec<Int> {
    g.coeffs().iter().map(|&c| Int::from(c)).collect()
}

/// Multiply two integer-coefficient polynomials.
fn int_mul(a: &[Int], b: &[Int]) -> Vec<Int> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// One round of the criterion on explicit integer coefficients.
fn dedekind_round(coeffs: &[Int], p: u64) -> (bool, bool) {
    let fbar = ModPoly::from_int_coeffs(p, coeffs);
    let factors = fbar.factor();
    let order_ramified = factors.iter().any(|&(_, e)| e > 1);
    if !order_ramified {
        // f squarefree mod p: p does not divide the index, order p-maximal.
        return (true, false);
    }
    // g = product of the distinct irreducible factors, h with g h = f mod p.
    let mut g = ModPoly::one(p);
    let mut h = ModPoly::one(p);
    let mut rep = ModPoly::one(p);
    for (q, e) in &factors {
        g = g.mul(q);
        for _ in 1..*e {
            h = h.mul(q);
        }
        if *e > 1 {
            rep = rep.mul(q);
        }
    }
    // T = (g h - f) / p over the integers, using lifts of g and h.
    let gh = int_mul(&lift_ints(&g), &lift_ints(&h));
    let pp = Int::from(p);
    let mut t = vec![Int::zero(); coeffs.len().max(gh.len())];
    for (i, slot) in t.iter_mut().enumerate() {
        let a = gh.get(i).cloned().unwrap_or_else(Int::zero);
        let b = coeffs.get(i).cloned().unwrap_or_else(Int::zero);
        *slot = (a - b) / &pp;
    }
    let tbar = ModPoly::from_int_coeffs(p, &t);
    let d = tbar.gcd(&rep).gcd(&fbar);
    let p_maximal = d.degree() == Some(0);
    (p_maximal, true)
}

/// Dedekind's criterion for a monic integral polynomial at a prime p.
///
/// When the equation order is not p-maximal the test is retried on the
/// translated models f(x + k), k = 1..3, before giving up; an undecided
/// case falls back to the discriminant parity rule (odd v_p(disc) forces
/// ramification in every order, hence in the field).
pub fn dedekind_test(f: &UniPoly, p: u64) -> Result<DedekindOutcome, ArithError> {
    if !crate::arith::intutil::is_prime_u64(p) {
        return Err(ArithError::InvalidInput("modulus must be prime"));
    }
    let coeffs = monic_int_coeffs(f)?;
    let (p_maximal, order_ramified) = dedekind_round(&coeffs, p);
    if p_maximal {
        return Ok(DedekindOutcome {
            p_maximal,
            order_ramified,
            field_status: if order_ramified {
                PrimeStatus::Ramified
            } else {
                PrimeStatus::Unramified
            },
        });
    }
    for k in 1..=3i64 {
        let shifted = f.compose_linear(&Rat::one(), &crate::arith::rat(k));
        let sc = monic_int_coeffs(&shifted)?;
        let (max_k, ram_k) = dedekind_round(&sc, p);
        if max_k {
            return Ok(DedekindOutcome {
                p_maximal: false,
                order_ramified,
                field_status: if ram_k {
                    PrimeStatus::Ramified
                } else {
                    PrimeStatus::Unramified
                },
            });
        }
    }
    let disc = f.discriminant()?;
    let status = if !Field::is_zero(&disc)
        && crate::arith::intutil::int_valuation(disc.numer(), &Int::from(p)) % 2 == 1
    {
        // disc(field) and disc(f) differ by the square of the index, so an
        // odd p-valuation survives to the field discriminant.
        PrimeStatus::Ramified
    } else {
        PrimeStatus::Undetermined
    };
    Ok(DedekindOutcome {
        p_maximal: false,
        order_ramified,
        field_status: status,
    })
}

/// Per-prime ramification data for the field defined by a monic integral
/// polynomial: only primes dividing the polynomial discriminant can ramify.
#[derive(Clone, Debug, PartialEq)]
pub struct RamificationProfile {
    poly: UniPoly,
    disc: Rat,
    statuses: Vec<(Int, PrimeStatus)>,
}

impl RamificationProfile {
    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn discriminant(&self) -> &Rat {
        &self.disc
    }

    /// Candidate primes (divisors of the discriminant) with their status.
    pub fn statuses(&self) -> &[(Int, PrimeStatus)] {
        &self.statuses
    }

    /// The primes proven ramified.
    pub fn ramified_primes(&self) -> Vec<Int> {
        self.statuses
            .iter()
            .filter(|(_, s)| *s == PrimeStatus::Ramified)
            .map(|(p, _)| p.clone())
            .collect()
    }
}

/// Run Dedekind's criterion at every prime dividing the discriminant.
pub fn ramification_profile(f: &UniPoly) -> Result<RamificationProfile, ArithError> {
    let disc = f.discriminant()?;
    if Field::is_zero(&disc) {
        return Err(ArithError::InvalidInput(
            "polynomial has a repeated root",
        ));
    }
    monic_int_coeffs(f)?;
    let mut statuses = Vec::new();
    for (p, _) in factorize(&disc.numer().abs()) {
        let status = match p.to_u64() {
            Some(pu) => dedekind_test(f, pu)?.field_status,
            None => PrimeStatus::Undetermined,
        };
        statuses.push((p, status));
    }
    Ok(RamificationProfile {
        poly: f.clone(),
        disc,
        statuses,
    })
}

/// All squarefree d != 1 such that Q(sqrt(d)) is unramified outside the
/// given prime set: an odd prime ramifies exactly when it divides d, and 2
/// ramifies exactly when d is not 1 mod 4. Sorted by absolute value then
/// sign (positive first).
pub fn enumerate_quadratic_unramified(s: &[u64]) -> Vec<Int> {
    let mut primes: Vec<u64> = s.to_vec();
    primes.sort_unstable();
    primes.dedup();
    let allow_two = primes.contains(&2);
    let n = primes.len();
    let mut out: Vec<Int> = Vec::new();
    for mask in 0u32..(1 << n) {
        let mut d = Int::one();
        for (i, &p) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                d *= Int::from(p);
            }
        }
        for signed in [d.clone(), -d.clone()] {
            if signed.is_one() {
                continue;
            }
            let mod4 = ((&signed % 4i32) + 4i32) % 4i32;
            if mod4 != Int::one() && !allow_two {
                continue;
            }
            out.push(signed);
        }
    }
    out.sort_by(|a, b| {
        a.abs()
            .cmp(&b.abs())
            .then(b.sign().cmp(&a.sign()))
    });
    out.dedup();
    out
}

/// Factorization degree-shapes of a polynomial modulo the good primes below
/// a bound; a practical separator of small-degree fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingFingerprint {
    primes: Vec<u64>,
    shapes: Vec<Vec<usize>>,
}

impl SplittingFingerprint {
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Shape at the i-th sampled prime: sorted degrees of the irreducible
    /// factors (with multiplicity; all 1 for good primes).
    pub fn shapes(&self) -> &[Vec<usize>] {
        &self.shapes
    }

    pub fn shape_at(&self, p: u64) -> Option<&[usize]> {
        self.primes
            .iter()
            .position(|&q| q == p)
            .map(|i| self.shapes[i].as_slice())
    }
}

/// Sample the factorization shapes of an irreducible polynomial at every
/// prime p < bound not dividing its discriminant (times leading content).
pub fn fingerprint(f: &UniPoly, bound: u64) -> Result<SplittingFingerprint, ArithError> {
    match crate::arith::irreducibility_over_q(f) {
        crate::arith::Irreducibility::Irreducible => {}
        _ => {
            return Err(ArithError::InvalidInput(
                "fingerprint requires an irreducible polynomial",
            ))
        }
    }
    let (ints, _) = f.primitive_integer();
    let disc = UniPoly::new(ints.iter().map(|c| Rat::from_integer(c.clone())).collect())
        .discriminant()?;
    let lead = ints.last().expect("nonzero polynomial").clone();
    let bad = disc.numer().abs() * lead.abs();
    let mut primes = Vec::new();
    let mut shapes = Vec::new();
    for p in 2..bound {
        if !crate::arith::intutil::is_prime_u64(p) {
            continue;
        }
        if (&bad % Int::from(p)).sign() == Sign::NoSign {
            continue;
        }
        primes.push(p);
        shapes.push(ModPoly::from_int_coeffs(p, &ints).factor_shape());
    }
    Ok(SplittingFingerprint { primes, shapes })
}

/// Necessary condition for the fields defined by two irreducible
/// polynomials of equal degree to be isomorphic: same discriminant square
/// class and identical splitting shapes at all shared good primes below the
/// bound. For the handful of low-degree fields with tightly constrained
/// ramification this separates non-isomorphic fields in practice; in
/// general a `true` answer is heuristic.
pub fn fields_plausibly_isomorphic(
    f: &UniPoly,
    g: &UniPoly,
    bound: u64,
) -> Result<bool, ArithError> {
    if f.degree() != g.degree() {
        return Ok(false);
    }
    let df = f.discriminant()?;
    let dg = g.discriminant()?;
    if Field::is_zero(&df) || Field::is_zero(&dg) {
        return Err(ArithError::InvalidInput("repeated roots"));
    }
    // Same square class exactly when the product is a square.
    if !crate::arith::is_rational_square(&(df * dg)) {
        return Ok(false);
    }
    let ff = fingerprint(f, bound)?;
    let fg = fingerprint(g, bound)?;
    for (i, &p) in ff.primes().iter().enumerate() {
        if let Some(sg) = fg.shape_at(p) {
            if ff.shapes()[i].as_slice() != sg {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn dedekind_cubic_at_small_primes() {
        let f = up(&[-6, -6, 0, 1]); // x^3 - 6x - 6, Eisenstein at 2 and 3
        let d2 = dedekind_test(&f, 2).unwrap();
        assert!(d2.p_maximal && d2.order_ramified);
        assert_eq!(d2.field_status, PrimeStatus::Ramified);
        let d3 = dedekind_test(&f, 3).unwrap();
        assert!(d3.p_maximal && d3.order_ramified);
        assert_eq!(d3.field_status, PrimeStatus::Ramified);
        let d5 = dedekind_test(&f, 5).unwrap();
        assert!(d5.p_maximal && !d5.order_ramified);
        assert_eq!(d5.field_status, PrimeStatus::Unramified);
    }

    #[test]
    fn dedekind_gaussian_at_three() {
        let d = dedekind_test(&up(&[1, 0, 1]), 3).unwrap();
        assert!(d.p_maximal && !d.order_ramified);
        assert_eq!(d.field_status, PrimeStatus::Unramified);
    }

    #[test]
    fn dedekind_detects_non_maximal_order() {
        // x^2 - 5: Z[sqrt 5] has index 2 in the maximal order Z[(1+sqrt5)/2];
        // 2 is unramified in Q(sqrt 5) (5 = 1 mod 4).
        let d = dedekind_test(&up(&[-5, 0, 1]), 2).unwrap();
        assert!(!d.p_maximal);
        assert!(d.order_ramified);
        // v_2(disc) = v_2(20) = 2 is even, so parity cannot decide.
        assert_eq!(d.field_status, PrimeStatus::Undetermined);
        // 5 really ramifies and the order is 5-maximal.
        let d5 = dedekind_test(&up(&[-5, 0, 1]), 5).unwrap();
        assert!(d5.p_maximal);
        assert_eq!(d5.field_status, PrimeStatus::Ramified);
    }

    #[test]
    fn dedekind_rejects_bad_inputs() {
        assert!(dedekind_test(&up(&[1, 2]), 4).is_err()); // composite p
        assert!(dedekind_test(&up(&[1, 0, 2]), 3).is_err()); // non-monic
        let half = UniPoly::new(vec![crate::arith::ratio(1, 2), rat(0), rat(1)]);
        assert!(dedekind_test(&half, 3).is_err()); // non-integral
    }

    #[test]
    fn dedekind_parity_rule_on_random_cubics() {
        // Fixed-seed xorshift; v_p(disc) odd must force a ramified verdict.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 19) as i64 - 9
        };
        let mut checked = 0;
        while checked < 50 {
            let f = up(&[next(), next(), next(), 1]);
            let disc = f.discriminant().unwrap();
            if Field::is_zero(&disc) {
                continue;
            }
            checked += 1;
            for p in [2u64, 3, 5, 7, 11, 13] {
                let v = crate::arith::intutil::int_valuation(disc.numer(), &Int::from(p));
                if v % 2 == 1 {
                    let d = dedekind_test(&f, p).unwrap();
                    assert_eq!(d.field_status, PrimeStatus::Ramified, "f={f:?} p={p}");
                }
            }
        }
    }

    #[test]
    fn profile_of_the_descent_cubic() {
        let prof = ramification_profile(&up(&[-6, -6, 0, 1])).unwrap();
        assert_eq!(prof.discriminant(), &rat(-108));
        let ram = prof.ramified_primes();
        assert_eq!(ram, vec![Int::from(2), Int::from(3)]);
    }

    #[test]
    fn quadratic_enumeration() {
        let got = enumerate_quadratic_unramified(&[2, 3]);
        let want: Vec<Int> = [-1i64, 2, -2, 3, -3, 6, -6]
            .iter()
            .map(|&d| Int::from(d))
            .collect();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        let mut want_sorted = want.clone();
        want_sorted.sort();
        assert_eq!(got_sorted, want_sorted);
        assert_eq!(got.len(), 7);

        assert!(enumerate_quadratic_unramified(&[]).is_empty());
        let two = enumerate_quadratic_unramified(&[2]);
        let mut two_sorted = two;
        two_sorted.sort();
        let mut want2: Vec<Int> = [-1i64, 2, -2].iter().map(|&d| Int::from(d)).collect();
        want2.sort();
        assert_eq!(two_sorted, want2);
    }

    #[test]
    fn quadratic_enumeration_monotone_in_s() {
        let small = enumerate_quadratic_unramified(&[3]);
        let big = enumerate_quadratic_unramified(&[2, 3]);
        for d in &small {
            assert!(big.contains(d));
        }
        // Only -3 = 1 mod 4 survives without 2 in the set.
        assert_eq!(small, vec![Int::from(-3)]);
    }

    #[test]
    fn cube_root_fields_agree() {
        // x^3 - 2 and x^3 - 6x - 6 define the same field: with u = 2^(1/3),
        // beta = u + u^2 satisfies beta^3 = 6 + 6 beta. Discriminants are
        // both -108 and all splitting shapes agree.
        let f = up(&[-6, -6, 0, 1]);
        let g = up(&[-2, 0, 0, 1]);
        let ff = fingerprint(&f, 20).unwrap();
        let fg = fingerprint(&g, 20).unwrap();
        // 2 = 3^3 mod 5, so both have a root mod 5 (x = 2 and x = 3 resp.).
        assert_eq!(ff.shape_at(5), Some(&[1, 2][..]));
        assert_eq!(fg.shape_at(5), Some(&[1, 2][..]));
        assert!(fields_plausibly_isomorphic(&f, &g, 500).unwrap());
    }

    #[test]
    fn fingerprints_separate_cubics() {
        // Two cyclic cubic fields (conductors 9 and 63): discriminants 81
        // and 15876 = 126^2 are both squares, so only the shapes separate
        // them; at p = 17 the first splits completely, the second is inert.
        let f = up(&[-1, -3, 0, 1]);
        let g = up(&[-28, -21, 0, 1]);
        let ff = fingerprint(&f, 20).unwrap();
        let fg = fingerprint(&g, 20).unwrap();
        assert_eq!(ff.shape_at(17), Some(&[1, 1, 1][..]));
        assert_eq!(fg.shape_at(17), Some(&[3][..]));
        assert!(!fields_plausibly_isomorphic(&f, &g, 500).unwrap());
    }

    #[test]
    fn fingerprint_quadratic_reciprocity_spot_check() {
        let fp = fingerprint(&up(&[1, 0, 1]), 10).unwrap();
        assert_eq!(fp.shape_at(5), Some(&[1, 1][..])); // -1 square mod 5
        assert_eq!(fp.shape_at(3), Some(&[2][..])); // inert
        assert_eq!(fp.shape_at(7), Some(&[2][..])); // inert
    }

    #[test]
    fn fingerprint_rejects_reducible() {
        assert!(fingerprint(&up(&[-1, 0, 1]), 10).is_err());
    }

    #[test]
    fn plausible_isomorphism_reflexive_and_degree_gated() {
        let f = up(&[-6, -6, 0, 1]);
        assert!(fields_plausibly_isomorphic(&f, &f, 500).unwrap());
        assert!(!fields_plausibly_isomorphic(&f, &up(&[1, 0, 1]), 500).unwrap());
        // Different discriminant class: x^2+1 (disc -4) vs x^2-2 (disc 8).
        assert!(!fields_plausibly_isomorphic(&up(&[1, 0, 1]), &up(&[-2, 0, 1]), 100).unwrap());
        // Same field, different generators: x^2+1 vs x^2+4 ... not monic
        // coprime; use x^2 + 2x + 2 = (x+1)^2 + 1, also Q(i).
        assert!(fields_plausibly_isomorphic(&up(&[1, 0, 1]), &up(&[2, 2, 1]), 100).unwrap());
    }

    #[test]
    fn frey_cubics_match_the_descent_cubic() {
        // x^3 + 3bx - 2a for the triples with a != 0, c != 0 all define the
        // same 2-division field as x^3 - 6x - 6.
        let base = up(&[-6, -6, 0, 1]);
        for (a, b) in [(3i64, -2i64), (-3, -2), (1, 0), (-1, 0)] {
            let f = up(&[-2 * a, 3 * b, 0, 1]);
            assert_eq!(
                crate::arith::irreducibility_over_q(&f),
                crate::arith::Irreducibility::Irreducible
            );
            assert!(
                fields_plausibly_isomorphic(&f, &base, 500).unwrap(),
                "({a},{b})"
            );
        }
    }
}
