//! Integer utilities: factorization, divisor enumeration, square tests.
//!
//! Sizes here are modest (discriminants and cleared-denominator
//! coefficients of low-degree polynomials), so trial division with a
//! Pollard rho fallback is plenty.

use super::{Int, Rat};
use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Gcd of a coefficient slice; 1 for the empty slice.
pub fn content(coeffs: &[Int]) -> Int {
    let mut g = Int::zero();
    for c in coeffs {
        g = g.gcd(c);
    }
    if g.is_zero() {
        Int::one()
    } else {
        g
    }
}

/// Deterministic Miller-Rabin, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

fn pollard_rho(n: u64, seed: u64) -> Option<u64> {
    // Brent's variant on u64; n is odd, composite, not a prime power cheaply
    let mut c = seed;
    loop {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return Some(d);
        }
        c += 1;
        if c > seed + 20 {
            return None;
        }
    }
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n, 1).expect("rho should split a composite");
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Prime factorization of `|n|` as sorted `(prime, exponent)` pairs.
///
/// Panics on zero. Inputs beyond 128 bits are first stripped by trial
/// division; the cofactor is assumed to fit in a `u64` after that, which
/// holds for everything this crate produces.
pub fn factorize(n: &Int) -> Vec<(Int, u32)> {
    assert!(!n.is_zero(), "factorize(0)");
    let mut m = n.abs();
    let mut primes: Vec<u64> = Vec::new();
    for p in 2u64..=100_000 {
        if p > 3 && p % 2 == 0 {
            continue;
        }
        let pb = Int::from(p);
        if (&pb * &pb) > m {
            break;
        }
        while (&m % &pb).is_zero() {
            primes.push(p);
            m /= &pb;
        }
    }
    if !m.is_one() {
        let small: u64 = (&m).try_into().unwrap_or_else(|_| {
            panic!("factorize: cofactor exceeds u64");
        });
        factor_u64_into(small, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(Int, u32)> = Vec::new();
    for p in primes {
        let pb = Int::from(p);
        match out.last_mut() {
            Some((q, e)) if *q == pb => *e += 1,
            _ => out.push((pb, 1)),
        }
    }
    out
}

/// All positive divisors of `|n|` (n nonzero).
pub fn divisors(n: &Int) -> Vec<Int> {
    let f = factorize(n);
    let mut out = vec![Int::one()];
    for (p, e) in f {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = Int::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Squarefree part of `n` with sign: `n = squarefree_part(n) * square`.
pub fn squarefree_part(n: &Int) -> Int {
    assert!(!n.is_zero());
    let mut sf = if n.is_negative() { -Int::one() } else { Int::one() };
    for (p, e) in factorize(n) {
        if e % 2 == 1 {
            sf *= p;
        }
    }
    sf
}

/// Whether `q` is the square of a rational.
pub fn is_rational_square(q: &Rat) -> bool {
    if q.is_negative() {
        return false;
    }
    if q.is_zero() {
        return true;
    }
    let ns = q.numer().sqrt();
    let ds = q.denom().sqrt();
    &(&ns * &ns) == q.numer() && &(&ds * &ds) == q.denom()
}

/// Integer square root of `|n|` via `num-bigint`.
pub fn isqrt(n: &Int) -> Int {
    n.abs().sqrt()
}

/// Exact p-adic valuation of a nonzero integer.
pub fn int_valuation(n: &Int, p: &Int) -> u32 {
    assert!(!n.is_zero());
    let mut v = 0u32;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        m = q;
    }
}
