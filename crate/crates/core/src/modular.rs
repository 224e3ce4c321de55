//! Word-size prime fields for evaluation/interpolation of integer Laurent
//! polynomials, with Chinese remaindering back to exact integers.
//!
//! Batched values live in Montgomery form (`R = 2^32`) so the state-sum
//! inner loop is a branch-free multiply-reduce-add over `u32` lanes.

use rug::{Integer, Rational};

use crate::laurent::LaurentPolynomial;

/// Odd prime below `2^31` with Montgomery constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
    /// `-p^{-1} mod 2^32`
    neg_inv: u32,
    /// `2^64 mod p`
    r2: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Self {
        assert!(p % 2 == 1 && p < (1 << 31) && p > 2, "Montgomery needs an odd modulus below 2^31");
        // Newton iteration for p^{-1} mod 2^32.
        let mut inv: u32 = 1;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u32.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r2 = ((1u128 << 64) % p as u128) as u32;
        Self {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline(always)]
    fn redc(&self, t: u64) -> u32 {
        let m = (t as u32).wrapping_mul(self.neg_inv);
        let u = ((t + m as u64 * self.p as u64) >> 32) as u32;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline(always)]
    pub fn to_mont(&self, x: u32) -> u32 {
        self.redc(x as u64 * self.r2 as u64)
    }

    #[inline(always)]
    pub fn from_mont(&self, x: u32) -> u32 {
        self.redc(x as u64)
    }

    #[inline(always)]
    pub fn mont_mul(&self, a: u32, b: u32) -> u32 {
        self.redc(a as u64 * b as u64)
    }

    /// `acc[j] += a[j] * b[j]` for Montgomery-form lanes.
    #[inline]
    pub fn mul_add_lanes(&self, acc: &mut [u32], a: &[u32], b: &[u32]) {
        let p = self.p;
        let ni = self.neg_inv;
        for ((x, &y), &z) in acc.iter_mut().zip(a).zip(b) {
            let t = y as u64 * z as u64;
            let m = (t as u32).wrapping_mul(ni);
            let u = ((t + m as u64 * p as u64) >> 32) as u32;
            // u < 2p and *x < p, so one conditional subtraction per step suffices
            let u = u.min(u.wrapping_sub(p));
            let s = *x + u;
            *x = s.min(s.wrapping_sub(p));
        }
    }

    // Plain (non-Montgomery) arithmetic used outside the hot loop.

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        let mut b = a % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p as u64 - 2)
    }

    /// Reduction of an integer into `[0, p)`.
    pub fn reduce(&self, x: &Integer) -> u32 {
        let r = Integer::from(x % self.p);
        let r = if r < 0 { r + self.p } else { r };
        r.to_u32().expect("residue fits in u32")
    }

    /// Reduction of a rational with denominator prime to `p`.
    pub fn reduce_rational(&self, x: &Rational) -> u32 {
        let n = self.reduce(x.numer());
        let d = self.reduce(x.denom());
        self.mul(n, self.inv(d))
    }

    /// `sum c_e x^e` for a nonzero `x`.
    pub fn eval_laurent(&self, poly: &LaurentPolynomial, x: u32) -> u32 {
        let xinv = self.inv(x);
        let mut s = 0u32;
        for (e, c) in poly.terms() {
            let base = if e < 0 { xinv } else { x };
            let term = self.mul(self.reduce_rational(c), self.pow(base, e.unsigned_abs()));
            s = self.add(s, term);
        }
        s
    }
}

/// The `count` largest primes below `2^31`.
pub fn word_primes(count: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(count);
    let mut candidate: u32 = (1 << 31) - 1;
    while out.len() < count {
        if is_prime(candidate) {
            out.push(candidate);
        }
        candidate -= 2;
    }
    out
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Coefficients (lowest first) of the unique polynomial of degree
/// `< xs.len()` through the points `(xs[i], ys[i])`, by Newton divided
/// differences. Inputs and outputs are plain residues.
pub fn interpolate(field: &PrimeField, xs: &[u32], ys: &[u32]) -> Vec<u32> {
    let m = xs.len();
    assert_eq!(m, ys.len());
    let mut dd = ys.to_vec();
    for level in 1..m {
        for i in (level..m).rev() {
            let num = field.sub(dd[i], dd[i - 1]);
            let den = field.sub(xs[i], xs[i - level]);
            dd[i] = field.mul(num, field.inv(den));
        }
    }
    // Expand the Newton form from the innermost coefficient outwards.
    let mut coeffs = vec![0u32; m];
    for i in (0..m).rev() {
        // coeffs <- coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![0u32; m];
        for j in 0..m {
            if coeffs[j] == 0 {
                continue;
            }
            if j + 1 < m {
                next[j + 1] = field.add(next[j + 1], coeffs[j]);
            }
            next[j] = field.sub(next[j], field.mul(coeffs[j], xs[i]));
        }
        next[0] = field.add(next[0], dd[i]);
        coeffs = next;
    }
    coeffs
}

/// Incremental Chinese remaindering of integer vectors with symmetric
/// representatives.
#[derive(Clone, Debug)]
pub struct CrtAccumulator {
    modulus: Integer,
    values: Vec<Integer>,
}

impl CrtAccumulator {
    pub fn new(len: usize) -> Self {
        Self {
            modulus: Integer::from(1),
            values: vec![Integer::new(); len],
        }
    }

    pub fn modulus(&self) -> &Integer {
        &self.modulus
    }

    pub fn absorb(&mut self, field: &PrimeField, residues: &[u32]) {
        assert_eq!(residues.len(), self.values.len());
        let p = field.modulus();
        let m_mod_p = field.reduce(&self.modulus);
        let m_inv = field.inv(m_mod_p);
        for (v, &r) in self.values.iter_mut().zip(residues) {
            let cur = field.reduce(v);
            let t = field.mul(field.sub(r, cur), m_inv);
            *v += Integer::from(&self.modulus * t);
        }
        self.modulus *= p;
    }

    /// Symmetric representatives in `(-M/2, M/2]`.
    pub fn symmetric(&self) -> Vec<Integer> {
        let half = Integer::from(&self.modulus >> 1);
        self.values
            .iter()
            .map(|v| {
                if *v > half {
                    Integer::from(v - &self.modulus)
                } else {
                    v.clone()
                }
            })
            .collect()
    }
}
