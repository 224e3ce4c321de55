//! Colored Jones polynomials of braid closures from the quantum sl₂
//! R-matrix on the n-dimensional irreducible module.
//!
//! Basis `m_0..m_N` (`N = n - 1`, `m_0` of highest weight) with
//! `K m_i = v^{N-2i} m_i`. The braiding is rescaled by `v^{-N²/2}` so every
//! entry lies in `ℤ[v^±]`; its closure twist is then `v^N` per crossing.
//! The closure of strands `2..s` is a scalar on strand 1, read off the
//! highest-weight diagonal entry:
//!
//! ```text
//! λ(v) = Σ_x v^{Σ(N - 2x_i)} <m_0 ⊗ x | Ř_β | m_0 ⊗ x>,   J(q) = λ(v) v^{-N w},  q = v²
//! ```
//!
//! Exact polynomials are recovered by evaluating λ at many points modulo
//! word-size primes, interpolating in `q`, and Chinese remaindering. The
//! degree window and a coefficient bound come from the same state sum run
//! over interval and ℓ¹ surrogates.

use std::collections::HashMap;

use rug::Integer;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::modular::{interpolate, word_primes, CrtAccumulator, PrimeField};
use crate::precision::PrecisionComplex;

/// Which chirality the variable `q` is tied to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MirrorConvention {
    /// `σ₁³` on two strands gives `-q⁻⁴ + q⁻³ + q⁻¹` at n = 2.
    #[default]
    Standard,
    /// The opposite assignment `q ↔ q⁻¹`.
    Mirrored,
}

impl MirrorConvention {
    pub fn flipped(self) -> Self {
        match self {
            Self::Standard => Self::Mirrored,
            Self::Mirrored => Self::Standard,
        }
    }
}

/// Quantum integer `[k] = (v^k - v^{-k}) / (v - v^{-1})` in the variable `v`.
pub fn quantum_integer(k: i64) -> LaurentPolynomial {
    if k == 0 {
        return LaurentPolynomial::zero();
    }
    let sign = k.signum();
    let k = k.abs();
    LaurentPolynomial::from_terms((0..k).map(|i| (-(k - 1) + 2 * i, sign)))
}

/// `[m]! / ([k]! [m-k]!)` in `v`.
pub fn quantum_binomial(m: i64, k: i64) -> LaurentPolynomial {
    if k < 0 || k > m {
        return LaurentPolynomial::zero();
    }
    let mut num = LaurentPolynomial::one();
    let mut den = LaurentPolynomial::one();
    for i in 1..=k {
        num = &num * &quantum_integer(m - k + i);
        den = &den * &quantum_integer(i);
    }
    num.exact_div(&den).expect("quantum binomials are Laurent polynomials")
}

/// `v^i - v^{-i}`.
fn v_difference(i: i64) -> LaurentPolynomial {
    LaurentPolynomial::from_terms([(i, 1), (-i, -1)])
}

#[derive(Clone, Copy, Debug)]
struct Transfer {
    out_left: u8,
    out_right: u8,
    entry: u32,
}

/// Braiding `Ř` and its inverse on `V_n ⊗ V_n`, entries in `ℤ[v^±]`.
#[derive(Clone, Debug)]
pub struct RMatrix {
    n: usize,
    positive: Vec<Vec<Transfer>>,
    negative: Vec<Vec<Transfer>>,
    entries: Vec<LaurentPolynomial>,
}

impl RMatrix {
    pub fn new(n: usize) -> Self {
        assert!((1..=255).contains(&n), "color out of range");
        let big_n = (n - 1) as i64;
        let mut entries = Vec::new();
        let mut positive = vec![Vec::new(); n * n];
        let mut negative = vec![Vec::new(); n * n];
        for a in 0..n as i64 {
            for b in 0..n as i64 {
                // Ř(m_a ⊗ m_b) = Σ_k c_k m_{b+k} ⊗ m_{a-k}
                for k in 0..=a.min(big_n - b) {
                    let mut c = quantum_binomial(big_n - a + k, k);
                    for i in b + 1..=b + k {
                        c = &c * &v_difference(i);
                    }
                    let e = k * (k - 1) / 2 - big_n * (a + b) + 2 * (a - k) * (b + k);
                    entries.push(c.shift(e));
                    positive[(a * n as i64 + b) as usize].push(Transfer {
                        out_left: (b + k) as u8,
                        out_right: (a - k) as u8,
                        entry: (entries.len() - 1) as u32,
                    });
                }
                // Ř⁻¹(m_a ⊗ m_b) = Σ_k c_k m_{b-k} ⊗ m_{a+k}
                for k in 0..=b.min(big_n - a) {
                    let mut c = quantum_binomial(big_n - b + k, k);
                    for i in a + 1..=a + k {
                        c = &c * &v_difference(i);
                    }
                    if k % 2 == 1 {
                        c = -c;
                    }
                    let e = -k * (k - 1) / 2 + big_n * (a + b) - 2 * a * b;
                    entries.push(c.shift(e));
                    negative[(a * n as i64 + b) as usize].push(Transfer {
                        out_left: (b - k) as u8,
                        out_right: (a + k) as u8,
                        entry: (entries.len() - 1) as u32,
                    });
                }
            }
        }
        Self {
            n,
            positive,
            negative,
            entries,
        }
    }

    pub fn color(&self) -> usize {
        self.n
    }

    /// Dense matrix of the braiding (or its inverse) with entries in `v`,
    /// indexed `[out_left * n + out_right][in_left * n + in_right]`.
    pub fn dense(&self, inverse: bool) -> Vec<Vec<LaurentPolynomial>> {
        let n = self.n;
        let table = if inverse { &self.negative } else { &self.positive };
        let mut m = vec![vec![LaurentPolynomial::zero(); n * n]; n * n];
        for (input, list) in table.iter().enumerate() {
            for t in list {
                let out = t.out_left as usize * n + t.out_right as usize;
                m[out][input] = &m[out][input] + &self.entries[t.entry as usize];
            }
        }
        m
    }
}

/// Coefficient domain for the state sum. Each instance evaluates the same
/// contraction in a different carrier: residues, degree windows, norm
/// bounds, floating point, or exact polynomials.
pub(crate) trait StateAlgebra {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    /// Image of a polynomial in `v`.
    fn lift(&self, p: &LaurentPolynomial) -> Self::Elem;
    fn mul_add(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem);
}

/// `λ(v)`: the highest-weight entry of the closure of strands `2..s`.
pub(crate) fn closure_trace<A: StateAlgebra>(alg: &A, braid: &BraidWord, r: &RMatrix) -> A::Elem {
    let n = r.n;
    let s = braid.strands();
    let big_n = (n - 1) as i64;
    let lifted: Vec<A::Elem> = r.entries.iter().map(|p| alg.lift(p)).collect();
    let one = alg.lift(&LaurentPolynomial::one());
    let letters = braid.letters();

    let mut total = alg.zero();
    let starts = n.pow((s - 1) as u32);
    let mut digits = vec![0u8; s];
    let mut layer: Vec<(u64, A::Elem)> = Vec::new();
    let mut next: Vec<(u64, A::Elem)> = Vec::new();
    let mut index: HashMap<u64, usize> = HashMap::new();

    for code in 0..starts {
        let mut c = code;
        for d in digits.iter_mut().skip(1) {
            *d = (c % n) as u8;
            c /= n;
        }
        let start_key = pack(&digits);
        layer.clear();
        layer.push((start_key, one.clone()));

        for (pos, &letter) in letters.iter().enumerate() {
            let i = letter.unsigned_abs() as usize - 1;
            let table = if letter > 0 { &r.positive } else { &r.negative };
            let last = pos + 1 == letters.len();
            next.clear();
            index.clear();
            for (key, val) in &layer {
                let a = digit(*key, i);
                let b = digit(*key, i + 1);
                for t in &table[a as usize * n + b as usize] {
                    let nk = set_digit(set_digit(*key, i, t.out_left), i + 1, t.out_right);
                    if last && nk != start_key {
                        continue;
                    }
                    let slot = *index.entry(nk).or_insert_with(|| {
                        next.push((nk, alg.zero()));
                        next.len() - 1
                    });
                    alg.mul_add(&mut next[slot].1, &lifted[t.entry as usize], val);
                }
            }
            std::mem::swap(&mut layer, &mut next);
        }
        if letters.is_empty() {
            // identity braid: the diagonal entry is 1
        }
        if let Some((_, val)) = layer.iter().find(|(k, _)| *k == start_key) {
            let weight: i64 = digits.iter().skip(1).map(|&x| big_n - 2 * x as i64).sum();
            let mu = alg.lift(&LaurentPolynomial::monomial(weight, 1));
            alg.mul_add(&mut total, &mu, val);
        }
    }
    total
}

#[inline]
fn pack(d: &[u8]) -> u64 {
    d.iter().enumerate().fold(0u64, |acc, (i, &x)| acc | (x as u64) << (8 * i))
}

#[inline]
fn digit(key: u64, i: usize) -> u8 {
    (key >> (8 * i)) as u8
}

#[inline]
fn set_digit(key: u64, i: usize, x: u8) -> u64 {
    (key & !(0xffu64 << (8 * i))) | (x as u64) << (8 * i)
}

/// Exact polynomial arithmetic; slow, used as a reference.
pub(crate) struct ExactAlgebra;

impl StateAlgebra for ExactAlgebra {
    type Elem = LaurentPolynomial;
    fn zero(&self) -> LaurentPolynomial {
        LaurentPolynomial::zero()
    }
    fn lift(&self, p: &LaurentPolynomial) -> LaurentPolynomial {
        p.clone()
    }
    fn mul_add(&self, acc: &mut LaurentPolynomial, a: &LaurentPolynomial, b: &LaurentPolynomial) {
        *acc = &*acc + &(a * b);
    }
}

/// Tracks an exponent window containing every term that can appear.
pub(crate) struct DegreeAlgebra;

impl StateAlgebra for DegreeAlgebra {
    type Elem = Option<(i64, i64)>;
    fn zero(&self) -> Self::Elem {
        None
    }
    fn lift(&self, p: &LaurentPolynomial) -> Self::Elem {
        p.degrees().ok()
    }
    fn mul_add(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        if let (Some((alo, ahi)), Some((blo, bhi))) = (a, b) {
            let (lo, hi) = (alo + blo, ahi + bhi);
            *acc = Some(match *acc {
                Some((x, y)) => (x.min(lo), y.max(hi)),
                None => (lo, hi),
            });
        }
    }
}

/// Upper bound on the ℓ¹ norm (submultiplicative and subadditive).
pub(crate) struct NormAlgebra;

impl StateAlgebra for NormAlgebra {
    type Elem = f64;
    fn zero(&self) -> f64 {
        0.0
    }
    fn lift(&self, p: &LaurentPolynomial) -> f64 {
        p.l1_norm().to_f64()
    }
    fn mul_add(&self, acc: &mut f64, a: &f64, b: &f64) {
        *acc += a * b;
    }
}

/// Simultaneous evaluation at a batch of points modulo one prime.
pub(crate) struct ModularBatch {
    field: PrimeField,
    lanes: usize,
    min_exp: i64,
    /// Montgomery-form `x_j^e` for `e` in `min_exp..`, lane-major per exponent.
    powers: Vec<Vec<u32>>,
}

impl ModularBatch {
    pub(crate) fn new(field: PrimeField, points: &[u32], min_exp: i64, max_exp: i64) -> Self {
        let lanes = points.len();
        let mut powers = Vec::with_capacity((max_exp - min_exp + 1).max(0) as usize);
        let mut cur: Vec<u32> = points
            .iter()
            .map(|&x| {
                let xinv = field.inv(x);
                field.to_mont(pow_signed(&field, x, xinv, min_exp))
            })
            .collect();
        let step: Vec<u32> = points.iter().map(|&x| field.to_mont(x)).collect();
        for _ in min_exp..=max_exp {
            let next = cur.iter().zip(&step).map(|(&a, &b)| field.mont_mul(a, b)).collect();
            powers.push(std::mem::replace(&mut cur, next));
        }
        Self {
            field,
            lanes,
            min_exp,
            powers,
        }
    }
}

impl StateAlgebra for ModularBatch {
    type Elem = Vec<u32>;
    fn zero(&self) -> Vec<u32> {
        vec![0; self.lanes]
    }
    fn lift(&self, p: &LaurentPolynomial) -> Vec<u32> {
        let mut out = self.zero();
        for (e, c) in p.terms() {
            let c = self.field.to_mont(self.field.reduce_rational(c));
            let cs = vec![c; self.lanes];
            let row = &self.powers[(e - self.min_exp) as usize];
            self.field.mul_add_lanes(&mut out, &cs, row);
        }
        out
    }
    fn mul_add(&self, acc: &mut Vec<u32>, a: &Vec<u32>, b: &Vec<u32>) {
        self.field.mul_add_lanes(acc, a, b);
    }
}

/// Evaluation at one complex point `v0` with error tracking.
pub(crate) struct NumericAlgebra {
    v0: PrecisionComplex,
}

impl StateAlgebra for NumericAlgebra {
    type Elem = PrecisionComplex;
    fn zero(&self) -> PrecisionComplex {
        PrecisionComplex::zero(self.v0.prec())
    }
    fn lift(&self, p: &LaurentPolynomial) -> PrecisionComplex {
        crate::precision::eval_complex(p, &self.v0).expect("v0 is bounded away from zero")
    }
    fn mul_add(&self, acc: &mut PrecisionComplex, a: &PrecisionComplex, b: &PrecisionComplex) {
        acc.mul_add_assign(a, b);
    }
}

/// Normalized colored Jones polynomial `J_{K,n}(q)` of the braid closure,
/// exact with integer coefficients (`J_{K,1} = 1`, unknot `= 1`).
pub fn colored_jones(braid: &BraidWord, n: u32, convention: MirrorConvention) -> Result<LaurentPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("color n must be at least 1".into()));
    }
    let components = braid.components();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    if n == 1 {
        return Ok(LaurentPolynomial::one());
    }
    let r = RMatrix::new(n as usize);
    let framing = (n as i64 - 1) * braid.writhe();

    let (vlo, vhi) = closure_trace(&DegreeAlgebra, braid, &r)
        .ok_or_else(|| Error::InvalidArgument("empty state sum".into()))?;
    let qlo = div_ceil(vlo - framing, 2);
    let qhi = (vhi - framing).div_euclid(2);
    let width = (qhi - qlo + 1).max(1) as usize;
    let norm_bound = closure_trace(&NormAlgebra, braid, &r);

    // Two extra points check that λ v^{-Nw} really is a polynomial in v².
    let n_points = width + 2;
    let points: Vec<u32> = (0..n_points as u32).map(|i| i + 2).collect();
    let primes = word_primes(64);
    // exponent range of every polynomial the state sum lifts
    let weight_max = (braid.strands() as i64 - 1) * (n as i64 - 1);
    let (exp_lo, exp_hi) = r.entries.iter().filter_map(|e| e.degrees().ok()).fold(
        (-weight_max, weight_max.max(0)),
        |(lo, hi), (a, b)| (lo.min(a), hi.max(b)),
    );
    let needed = primes_for_bound(norm_bound);

    let mut crt = CrtAccumulator::new(width);
    let mut previous: Option<Vec<Integer>> = None;
    for (used, &p) in primes.iter().enumerate() {
        let field = PrimeField::new(p);
        let batch = ModularBatch::new(field, &points, exp_lo, exp_hi);
        let lambda = closure_trace(&batch, braid, &r);
        let mut qs = Vec::with_capacity(n_points);
        let mut ys = Vec::with_capacity(n_points);
        for (&v, &lv) in points.iter().zip(&lambda) {
            let q = field.mul(v, v);
            let vinv = field.inv(v);
            let qinv = field.inv(q);
            let mut y = field.from_mont(lv);
            y = field.mul(y, pow_signed(&field, v, vinv, -framing));
            y = field.mul(y, pow_signed(&field, q, qinv, -qlo));
            qs.push(q);
            ys.push(y);
        }
        let coeffs = interpolate(&field, &qs[..width], &ys[..width]);
        for k in width..n_points {
            let val = coeffs.iter().rev().fold(0u32, |acc, &c| field.add(field.mul(acc, qs[k]), c));
            if val != ys[k] {
                return Err(Error::InvalidArgument(format!(
                    "state sum is not a polynomial in q on the window [{qlo}, {qhi}] (prime {p})"
                )));
            }
        }
        crt.absorb(&field, &coeffs);
        let current = crt.symmetric();
        let done = match needed {
            Some(k) => used + 1 >= k,
            // Without a usable a priori bound, stop once two consecutive
            // reconstructions agree.
            None => previous.as_ref() == Some(&current),
        };
        if done {
            let poly = LaurentPolynomial::from_terms(
                current
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| (qlo + i as i64, c)),
            );
            return Ok(match convention {
                MirrorConvention::Standard => poly,
                MirrorConvention::Mirrored => poly.mirror(),
            });
        }
        previous = Some(current);
    }
    Err(Error::InvalidArgument("coefficient reconstruction did not stabilize".into()))
}

/// Table `J_{K,1..=n_max}`.
pub fn colored_jones_table(
    braid: &BraidWord,
    n_max: u32,
    convention: MirrorConvention,
) -> Result<Vec<LaurentPolynomial>> {
    (1..=n_max).map(|n| colored_jones(braid, n, convention)).collect()
}

/// Same state sum evaluated at `q = q0` in tracked-error arithmetic.
pub fn colored_jones_numeric(
    braid: &BraidWord,
    n: u32,
    q0: &PrecisionComplex,
    convention: MirrorConvention,
) -> Result<PrecisionComplex> {
    if n == 0 {
        return Err(Error::InvalidArgument("color n must be at least 1".into()));
    }
    let components = braid.components();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    if q0.abs_f64() <= q0.radius() {
        return Err(Error::InvalidArgument("q0 may be zero".into()));
    }
    if n == 1 {
        return Ok(PrecisionComplex::one(q0.prec()));
    }
    let q = match convention {
        MirrorConvention::Standard => q0.clone(),
        MirrorConvention::Mirrored => q0.recip()?,
    };
    let v0 = q.sqrt()?;
    let r = RMatrix::new(n as usize);
    let lambda = closure_trace(&NumericAlgebra { v0: v0.clone() }, braid, &r);
    let framing = (n as i64 - 1) * braid.writhe();
    Ok(lambda.mul(&v0.powi(-framing)?))
}

/// Same state sum with exact polynomial coefficients throughout, returning
/// `J` as a polynomial in `q`. Only practical for small colors.
pub fn colored_jones_reference(braid: &BraidWord, n: u32, convention: MirrorConvention) -> Result<LaurentPolynomial> {
    let components = braid.components();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    let r = RMatrix::new(n as usize);
    let lambda = closure_trace(&ExactAlgebra, braid, &r);
    let framing = (n as i64 - 1) * braid.writhe();
    let j_v = lambda.shift(-framing);
    let mut terms = Vec::new();
    for (e, c) in j_v.terms() {
        if e % 2 != 0 {
            return Err(Error::InvalidArgument(format!("odd power v^{e} in the normalized invariant")));
        }
        terms.push((e / 2, c.clone()));
    }
    let poly = LaurentPolynomial::from_terms(terms);
    Ok(match convention {
        MirrorConvention::Standard => poly,
        MirrorConvention::Mirrored => poly.mirror(),
    })
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

fn pow_signed(field: &PrimeField, x: u32, xinv: u32, e: i64) -> u32 {
    if e >= 0 {
        field.pow(x, e as u64)
    } else {
        field.pow(xinv, e.unsigned_abs())
    }
}

/// Primes needed so the product exceeds twice the coefficient bound.
fn primes_for_bound(bound: f64) -> Option<usize> {
    if !bound.is_finite() {
        return None;
    }
    // each prime contributes just under 31 bits
    let bits = (2.0 * bound + 1.0).log2();
    let k = (bits / 30.99).ceil().max(1.0) as usize;
    (k <= 16).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().map(|&(e, c)| (e, c)))
    }

    #[test]
    fn quantum_numbers() {
        assert_eq!(quantum_integer(3), lp(&[(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(quantum_binomial(4, 2), lp(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]));
        assert_eq!(quantum_binomial(5, 0), LaurentPolynomial::one());
    }

    fn kron_left(m: &[Vec<LaurentPolynomial>], n: usize) -> Vec<Vec<LaurentPolynomial>> {
        // m ⊗ id on V^{⊗3}
        let d = n * n * n;
        let mut out = vec![vec![LaurentPolynomial::zero(); d]; d];
        for i in 0..n * n {
            for j in 0..n * n {
                if m[i][j].is_zero() {
                    continue;
                }
                for x in 0..n {
                    out[i * n + x][j * n + x] = m[i][j].clone();
                }
            }
        }
        out
    }

    fn kron_right(m: &[Vec<LaurentPolynomial>], n: usize) -> Vec<Vec<LaurentPolynomial>> {
        let d = n * n * n;
        let mut out = vec![vec![LaurentPolynomial::zero(); d]; d];
        for i in 0..n * n {
            for j in 0..n * n {
                if m[i][j].is_zero() {
                    continue;
                }
                for x in 0..n {
                    out[x * n * n + i][x * n * n + j] = m[i][j].clone();
                }
            }
        }
        out
    }

    fn matmul(a: &[Vec<LaurentPolynomial>], b: &[Vec<LaurentPolynomial>]) -> Vec<Vec<LaurentPolynomial>> {
        let d = a.len();
        let mut out = vec![vec![LaurentPolynomial::zero(); d]; d];
        for i in 0..d {
            for k in 0..d {
                if a[i][k].is_zero() {
                    continue;
                }
                for j in 0..d {
                    if !b[k][j].is_zero() {
                        out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn braiding_satisfies_yang_baxter_and_inverts() {
        for n in 2..=3 {
            let r = RMatrix::new(n);
            let pos = r.dense(false);
            let neg = r.dense(true);
            let id = matmul(&pos, &neg);
            for (i, row) in id.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let want = if i == j { LaurentPolynomial::one() } else { LaurentPolynomial::zero() };
                    assert_eq!(*x, want, "n={n} ({i},{j})");
                }
            }
            let r1 = kron_left(&pos, n);
            let r2 = kron_right(&pos, n);
            assert_eq!(matmul(&matmul(&r1, &r2), &r1), matmul(&matmul(&r2, &r1), &r2), "n={n}");
        }
    }

    #[test]
    fn single_crossing_is_an_unknot() {
        let b = BraidWord::unknot();
        for n in 1..=6 {
            assert!(colored_jones(&b, n, MirrorConvention::Standard).unwrap().is_one());
        }
        let b = BraidWord::new(3, vec![1, -2]).unwrap();
        assert!(colored_jones(&b, 4, MirrorConvention::Standard).unwrap().is_one());
    }

    #[test]
    fn trefoil_anchor() {
        let j = colored_jones(&BraidWord::trefoil(), 2, MirrorConvention::Standard).unwrap();
        assert_eq!(j, lp(&[(-4, -1), (-3, 1), (-1, 1)]));
        let m = colored_jones(&BraidWord::trefoil(), 2, MirrorConvention::Mirrored).unwrap();
        assert_eq!(m, lp(&[(4, -1), (3, 1), (1, 1)]));
    }

    #[test]
    fn figure_eight_at_two() {
        let j = colored_jones(&BraidWord::figure_eight(), 2, MirrorConvention::Standard).unwrap();
        assert_eq!(j, lp(&[(2, 1), (1, -1), (0, 1), (-1, -1), (-2, 1)]));
    }

    #[test]
    fn modular_path_matches_exact_reference() {
        for b in [BraidWord::trefoil(), BraidWord::figure_eight(), BraidWord::three_twist()] {
            for n in 2..=4 {
                let fast = colored_jones(&b, n, MirrorConvention::Standard).unwrap();
                let slow = colored_jones_reference(&b, n, MirrorConvention::Standard).unwrap();
                assert_eq!(fast, slow, "{b} n={n}");
            }
        }
    }

    #[test]
    fn links_are_refused() {
        let link = BraidWord::new_unchecked_closure(2, vec![1, 1]).unwrap();
        assert_eq!(
            colored_jones(&link, 2, MirrorConvention::Standard),
            Err(Error::NotAKnot { components: 2 })
        );
    }
}
