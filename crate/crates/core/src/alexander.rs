//! Alexander polynomial of a braid closure via the unreduced Burau
//! representation.
//!
//! For a braid `β` on `s` strands with Burau image `B(t)`, deleting the last
//! row and column of `I - B(t)` leaves a matrix whose determinant is
//! `Δ(t)` up to a unit `±t^k`. The result is then symmetrized and normalized
//! so that `Δ(t⁻¹) = Δ(t)` and `Δ(1) = 1`.

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;

type Matrix = Vec<Vec<LaurentPolynomial>>;

fn identity(s: usize) -> Matrix {
    (0..s)
        .map(|i| {
            (0..s)
                .map(|j| if i == j { LaurentPolynomial::one() } else { LaurentPolynomial::zero() })
                .collect()
        })
        .collect()
}

/// Unreduced Burau image of the braid word.
pub fn burau_matrix(braid: &BraidWord) -> Matrix {
    let s = braid.strands();
    let t = LaurentPolynomial::q();
    let one = LaurentPolynomial::one();
    let tinv = LaurentPolynomial::monomial(-1, 1);
    let mut m = identity(s);
    for &l in braid.letters() {
        let i = l.unsigned_abs() as usize - 1;
        // block acting on rows i, i+1 from the right
        let block = if l > 0 {
            [[&one - &t, t.clone()], [one.clone(), LaurentPolynomial::zero()]]
        } else {
            [[LaurentPolynomial::zero(), one.clone()], [tinv.clone(), &one - &tinv]]
        };
        for row in m.iter_mut() {
            let a = row[i].clone();
            let b = row[i + 1].clone();
            row[i] = &(&a * &block[0][0]) + &(&b * &block[1][0]);
            row[i + 1] = &(&a * &block[0][1]) + &(&b * &block[1][1]);
        }
    }
    m
}

/// Fraction-free (Bareiss) determinant with row pivoting.
pub fn determinant(mut m: Matrix) -> Result<LaurentPolynomial> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPolynomial::one());
    }
    let mut sign = false;
    let mut prev = LaurentPolynomial::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Ok(LaurentPolynomial::zero());
        };
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev)?;
            }
            m[i][k] = LaurentPolynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if sign { -d } else { d })
}

/// Shifts to a palindromic exponent range and fixes the sign by `Δ(1) = 1`.
pub fn normalize_alexander(p: &LaurentPolynomial) -> Result<LaurentPolynomial> {
    let (lo, hi) = p.degrees()?;
    if (lo + hi) % 2 != 0 {
        return Err(Error::InvalidArgument(format!("odd exponent span in {p}")));
    }
    let shifted = p.shift(-(lo + hi) / 2);
    let at_one = shifted.eval_one();
    let normalized = if at_one == 1 {
        shifted
    } else if at_one == -1 {
        -shifted
    } else {
        return Err(Error::InvalidArgument(format!("Δ(1) = {at_one}, expected ±1")));
    };
    if normalized != normalized.mirror() {
        return Err(Error::InvalidArgument(format!("{normalized} is not symmetric")));
    }
    Ok(normalized)
}

/// Symmetrized, normalized Alexander polynomial `Δ_K(t)`.
pub fn alexander(braid: &BraidWord) -> Result<LaurentPolynomial> {
    let components = braid.components();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    let s = braid.strands();
    let b = burau_matrix(braid);
    let minor: Matrix = (0..s - 1)
        .map(|i| {
            (0..s - 1)
                .map(|j| {
                    let id = if i == j { LaurentPolynomial::one() } else { LaurentPolynomial::zero() };
                    &id - &b[i][j]
                })
                .collect()
        })
        .collect();
    normalize_alexander(&determinant(minor)?)
}
