//! Univariate polynomial arithmetic and factorization over prime fields.
//!
//! Degrees stay at or below 12 and primes below a few hundred thousand, so
//! dense `u64` coefficient vectors with Cantor-Zassenhaus splitting are
//! sufficient. Splitting uses a fixed-seed xorshift generator, keeping the
//! factorization deterministic across runs.

use crate::arith::intutil::{is_prime_u64, mul_mod_u64, pow_mod_u64};
use crate::arith::Int;
use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

/// A polynomial over `F_p`, coefficients ascending, leading nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    p: u64,
    c: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime, a nonzero mod p
    pow_mod_u64(a, p - 2, p)
}

impl ModPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        debug_assert!(is_prime_u64(p));
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    /// Reduce integer coefficients mod p.
    pub fn from_int_coeffs(p: u64, coeffs: &[Int]) -> Self {
        let pb = Int::from(p);
        let c = coeffs
            .iter()
            .map(|x| {
                let r = x.mod_floor(&pb);
                debug_assert!(!r.is_negative());
                r.to_u64().expect("residue fits u64")
            })
            .collect();
        ModPoly::new(p, c)
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        ModPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        ModPoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &a in self.c.iter().rev() {
            acc = (mul_mod_u64(acc, x % self.p, self.p) + a) % self.p;
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0u64; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            c[i] = (a + b) % self.p;
        }
        ModPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0u64; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            c[i] = (a + self.p - b) % self.p;
        }
        ModPoly::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ModPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + mul_mod_u64(a, b, self.p)) % self.p;
            }
        }
        ModPoly::new(self.p, c)
    }

    pub fn scale(&self, k: u64) -> Self {
        ModPoly::new(self.p, self.c.iter().map(|&a| mul_mod_u64(a, k % self.p, self.p)).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = d.c.len() - 1;
        let linv = inv_mod(d.leading(), p);
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return (ModPoly::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dd] % p;
            if lead == 0 {
                continue;
            }
            let q = mul_mod_u64(lead, linv, p);
            quot[k] = q;
            for (j, &b) in d.c.iter().enumerate() {
                let t = mul_mod_u64(q, b, p);
                rem[k + j] = (rem[k + j] + p - t) % p;
            }
        }
        (ModPoly::new(p, quot), ModPoly::new(p, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return ModPoly::zero(self.p);
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mul_mod_u64(a, (i as u64) % self.p, self.p))
            .collect();
        ModPoly::new(self.p, c)
    }

    /// `self^e mod m`, with a big-integer exponent.
    pub fn pow_mod(&self, e: &Int, m: &Self) -> Self {
        let mut acc = ModPoly::one(self.p);
        let mut base = self.rem(m);
        let bits = e.to_biguint().expect("nonnegative exponent");
        for i in 0..bits.bits() {
            if bits.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
        }
        acc
    }

    /// Squarefree decomposition in characteristic p: pairs `(g, e)` with
    /// `self = lc * prod g^e`, each `g` monic squarefree.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        fn go(f: &ModPoly, mult: u32, out: &mut Vec<(ModPoly, u32)>) {
            let p = f.p;
            if f.degree().map_or(true, |d| d == 0) {
                return;
            }
            let df = f.derivative();
            if df.is_zero() {
                // f = g(x^p); in F_p the p-th root just contracts exponents
                let mut c = Vec::new();
                for (i, &a) in f.c.iter().enumerate() {
                    if i % (p as usize) == 0 {
                        c.push(a);
                    } else {
                        debug_assert_eq!(a, 0);
                    }
                }
                go(&ModPoly::new(p, c), mult * (p as u32), out);
                return;
            }
            let mut t = f.gcd(&df);
            let mut v = f.div_rem(&t).0.monic();
            let mut i = 1u32;
            while v.degree().map_or(false, |d| d > 0) {
                let w = v.gcd(&t);
                let fi = v.div_rem(&w).0.monic();
                if fi.degree().map_or(false, |d| d > 0) {
                    out.push((fi, mult * i));
                }
                t = t.div_rem(&w).0.monic();
                v = w;
                i += 1;
            }
            // whatever remains of t is a p-th power part
            go(&t, mult, out);
        }
        let mut out = Vec::new();
        go(&self.monic(), 1, &mut out);
        out
    }

    /// Distinct-degree decomposition of a monic squarefree polynomial:
    /// pairs `(product of irreducible factors of degree d, d)`.
    pub fn distinct_degree(&self) -> Vec<(Self, usize)> {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        let mut h = ModPoly::x(p);
        let mut d = 0usize;
        while f.degree().map_or(false, |n| n >= 1) {
            d += 1;
            if f.degree().unwrap() < 2 * d {
                out.push((f.clone(), f.degree().unwrap()));
                break;
            }
            h = h.pow_mod(&Int::from(p), &f);
            let g = h.sub(&ModPoly::x(p)).gcd(&f);
            if g.degree().map_or(false, |n| n >= 1) {
                out.push((g.clone(), d));
                f = f.div_rem(&g).0.monic();
                h = h.rem(&f);
            }
        }
        out
    }

    /// Split a monic product of distinct irreducibles of equal degree `d`.
    fn equal_degree_split(&self, d: usize, rng: &mut XorShift) -> Vec<Self> {
        let p = self.p;
        let n = self.degree().unwrap();
        if n == d {
            return vec![self.clone()];
        }
        loop {
            let r = ModPoly::new(p, (0..n).map(|_| rng.next() % p).collect());
            if r.degree().map_or(true, |dr| dr == 0) {
                continue;
            }
            let g = if p == 2 {
                // trace map r + r^2 + ... + r^(2^(d-1))
                let mut t = r.clone();
                let mut acc = r.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                acc.gcd(self)
            } else {
                let e = (Int::from(p).pow(d as u32) - 1) / 2;
                let s = r.pow_mod(&e, self);
                s.sub(&ModPoly::one(p)).gcd(self)
            };
            if let Some(dg) = g.degree() {
                if dg > 0 && dg < n {
                    let rest = self.div_rem(&g).0.monic();
                    let mut out = g.equal_degree_split(d, rng);
                    out.extend(rest.equal_degree_split(d, rng));
                    return out;
                }
            }
        }
    }

    /// Full factorization into monic irreducibles with multiplicities.
    pub fn factor(&self) -> Vec<(Self, u32)> {
        assert!(!self.is_zero(), "factor of zero polynomial");
        let mut rng = XorShift::new(0x9e3779b97f4a7c15);
        let mut out = Vec::new();
        for (g, e) in self.squarefree_decomposition() {
            for (h, d) in g.distinct_degree() {
                for irr in h.equal_degree_split(d, &mut rng) {
                    out.push((irr, e));
                }
            }
        }
        out.sort_by(|a, b| {
            a.0.degree()
                .cmp(&b.0.degree())
                .then_with(|| a.0.c.cmp(&b.0.c))
        });
        out
    }

    /// Degrees of the irreducible factors, each repeated with its
    /// multiplicity, sorted ascending.
    pub fn factor_shape(&self) -> Vec<usize> {
        let mut shape = Vec::new();
        for (g, e) in self.factor() {
            for _ in 0..e {
                shape.push(g.degree().unwrap());
            }
        }
        shape.sort_unstable();
        shape
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(_) => {
                let sq = self.gcd(&self.derivative());
                if sq.degree() != Some(0) && !self.derivative().is_zero() {
                    return false;
                }
                if self.derivative().is_zero() {
                    return false;
                }
                let dd = self.distinct_degree();
                dd.len() == 1 && dd[0].1 == self.degree().unwrap()
            }
        }
    }
}

struct XorShift {
    state: u64,
}

impl XorShift {
    fn new(seed: u64) -> Self {
        XorShift { state: seed }
    }

    fn next(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }
}
