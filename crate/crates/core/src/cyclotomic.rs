//! Habiro's cyclotomic expansion `J_{K,n} = Σ_k C_{n,k} C_{K,k}` with kernel
//! `C_{n,k}(q) = Π_{j=1}^k (qⁿ + q⁻ⁿ − q^j − q⁻ʲ)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jones::MirrorConvention;
use crate::laurent::LaurentPolynomial;
use crate::series::TruncatedSeries;

fn kernel_memo() -> &'static Mutex<HashMap<(u32, u32), Arc<LaurentPolynomial>>> {
    static MEMO: OnceLock<Mutex<HashMap<(u32, u32), Arc<LaurentPolynomial>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `qⁿ + q⁻ⁿ − q^j − q⁻ʲ`.
pub fn kernel_factor(n: u32, j: u32) -> LaurentPolynomial {
    let (n, j) = (n as i64, j as i64);
    LaurentPolynomial::from_terms([(n, 1), (-n, 1), (j, -1), (-j, -1)])
}

/// `C_{n,k}(q)`; zero once `k ≥ n`.
pub fn cyclotomic_kernel(n: u32, k: u32) -> Arc<LaurentPolynomial> {
    if k == 0 {
        return Arc::new(LaurentPolynomial::one());
    }
    if let Some(v) = kernel_memo().lock().expect("memo lock").get(&(n, k)) {
        return v.clone();
    }
    let prev = cyclotomic_kernel(n, k - 1);
    let value = Arc::new(&*prev * &kernel_factor(n, k));
    kernel_memo()
        .lock()
        .expect("memo lock")
        .insert((n, k), value.clone());
    value
}

/// The coefficients `C_{K,0..=k_max}` of one knot.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclotomicCoefficients {
    pub knot: String,
    pub convention: MirrorConvention,
    pub coeffs: Vec<LaurentPolynomial>,
}

impl CyclotomicCoefficients {
    pub fn new(knot: impl Into<String>, convention: MirrorConvention, coeffs: Vec<LaurentPolynomial>) -> Self {
        Self {
            knot: knot.into(),
            convention,
            coeffs,
        }
    }

    pub fn k_max(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn get(&self, k: usize) -> Option<&LaurentPolynomial> {
        self.coeffs.get(k)
    }
}

/// `J_{K,n}` from the expansion. Needs `C_{K,k}` for every `k < n`.
pub fn jones_from_cyclotomic(c: &CyclotomicCoefficients, n: u32) -> Result<LaurentPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("color n must be at least 1".into()));
    }
    if n as usize > c.coeffs.len() {
        return Err(Error::InsufficientCoefficients {
            needed: n as usize - 1,
            available: c.k_max(),
        });
    }
    debug_assert!(cyclotomic_kernel(n, n).is_zero());
    Ok((0..n)
        .map(|k| &*cyclotomic_kernel(n, k) * &c.coeffs[k as usize])
        .sum())
}

/// Triangular inversion from `J_{K,1..=k_max+1}` (`jones[i]` is `J_{K,i+1}`).
pub fn cyclotomic_from_jones(
    knot: impl Into<String>,
    convention: MirrorConvention,
    jones: &[LaurentPolynomial],
    k_max: usize,
) -> Result<CyclotomicCoefficients> {
    if jones.len() < k_max + 1 {
        return Err(Error::InvalidArgument(format!(
            "need J for n = 1..={}, got {} colors",
            k_max + 1,
            jones.len()
        )));
    }
    let mut coeffs: Vec<LaurentPolynomial> = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let n = k as u32 + 1;
        let mut rest = jones[k].clone();
        for (l, cl) in coeffs.iter().enumerate() {
            rest = &rest - &(&*cyclotomic_kernel(n, l as u32) * cl);
        }
        let ck = rest.exact_div(&cyclotomic_kernel(n, k as u32)).map_err(|e| match e {
            Error::InexactDivision(msg) => Error::InexactDivision(format!("C_{{K,{k}}}: {msg}")),
            other => other,
        })?;
        coeffs.push(ck);
    }
    Ok(CyclotomicCoefficients::new(knot, convention, coeffs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralityReport {
    pub per_k: Vec<bool>,
    pub passed: bool,
    pub first_failure: Option<usize>,
}

pub fn integrality_check(c: &CyclotomicCoefficients) -> IntegralityReport {
    let per_k: Vec<bool> = c.coeffs.iter().map(LaurentPolynomial::is_integral).collect();
    let first_failure = per_k.iter().position(|ok| !ok);
    IntegralityReport {
        passed: first_failure.is_none(),
        per_k,
        first_failure,
    }
}

/// `⟨C_{K,l}⟩_j` for `j ≤ order`, as one series per `l`.
pub fn cyclotomic_taylor(c: &CyclotomicCoefficients, order: usize) -> Vec<TruncatedSeries> {
    c.coeffs
        .iter()
        .map(|p| TruncatedSeries::of_laurent_at_exp(p, order))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    fn lp(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn kernel_examples() {
        assert!(cyclotomic_kernel(7, 0).is_one());
        assert_eq!(*cyclotomic_kernel(2, 1), lp(&[(2, 1), (-2, 1), (1, -1), (-1, -1)]));
        for n in 1..6 {
            for k in n..n + 3 {
                assert!(cyclotomic_kernel(n, k).is_zero(), "C_{n},{k}");
            }
        }
    }

    #[test]
    fn kernel_forms_agree_and_are_palindromic() {
        // s = q^{1/2}; the first two product forms live in Z[s^±]
        let sdiff = |j: i64| lp(&[(j, 1), (-j, -1)]);
        for n in 1..=8i64 {
            for k in 1..n {
                let third = cyclotomic_kernel(n as u32, k as u32);
                let in_s = third.substitute_power(2);

                let mut first = LaurentPolynomial::one();
                for j in n - k..=n + k {
                    first = &first * &sdiff(j);
                }
                let first = first.exact_div(&sdiff(n)).unwrap();
                assert_eq!(first, in_s, "first form n={n} k={k}");

                let sn = sdiff(n);
                let mut second = LaurentPolynomial::one();
                for j in 1..=k {
                    let sj = sdiff(j);
                    second = &second * &(&(&sn * &sn) - &(&sj * &sj));
                }
                assert_eq!(second, in_s, "second form n={n} k={k}");
                assert_eq!(third.mirror(), *third);
            }
        }
    }

    fn trefoil_jones(n: u32) -> LaurentPolynomial {
        // closed form with C_{K,k} = (-1)^k q^{-k(k+3)/2}
        (0..n)
            .map(|k| {
                let k = k as i64;
                let sign = if k % 2 == 0 { 1 } else { -1 };
                &*cyclotomic_kernel(n, k as u32) * &lp(&[(-k * (k + 3) / 2, sign)])
            })
            .sum()
    }

    #[test]
    fn inversion_round_trip() {
        let jones: Vec<_> = (1..=7).map(trefoil_jones).collect();
        let c = cyclotomic_from_jones("3_1", MirrorConvention::Standard, &jones, 6).unwrap();
        assert_eq!(c.coeffs[1], lp(&[(-2, -1)]));
        for n in 1..=7 {
            assert_eq!(jones_from_cyclotomic(&c, n).unwrap(), jones[n as usize - 1]);
        }
        assert_eq!(
            jones_from_cyclotomic(&c, 8),
            Err(Error::InsufficientCoefficients { needed: 7, available: 6 })
        );
        assert!(integrality_check(&c).passed);
    }

    #[test]
    fn forward_sum_ignores_higher_coefficients() {
        let mut c = CyclotomicCoefficients::new("x", MirrorConvention::Standard, vec![LaurentPolynomial::one(); 5]);
        let before = jones_from_cyclotomic(&c, 3).unwrap();
        c.coeffs[3] = lp(&[(5, 17)]);
        c.coeffs[4] = lp(&[(-9, 2)]);
        assert_eq!(jones_from_cyclotomic(&c, 3).unwrap(), before);
        // J_{4_1,3}
        let expected = lp(&[
            (6, 1), (5, -1), (4, -1), (3, 2), (2, -1), (1, -1), (0, 3),
            (-1, -1), (-2, -1), (-3, 2), (-4, -1), (-5, -1), (-6, 1),
        ]);
        assert_eq!(before, expected);
    }

    #[test]
    fn inexact_input_is_reported() {
        let jones = vec![LaurentPolynomial::one(), lp(&[(1, 1)])];
        let err = cyclotomic_from_jones("bad", MirrorConvention::Standard, &jones, 1).unwrap_err();
        assert!(matches!(err, Error::InexactDivision(ref m) if m.contains("C_{K,1}")));
    }

    #[test]
    fn corrupted_table_fails_integrality() {
        let mut c = CyclotomicCoefficients::new("4_1", MirrorConvention::Standard, vec![LaurentPolynomial::one(); 4]);
        c.coeffs[2] = LaurentPolynomial::constant(Rational::from((1, 2)));
        let r = integrality_check(&c);
        assert!(!r.passed);
        assert_eq!(r.first_failure, Some(2));
        assert_eq!(r.per_k, vec![true, true, false, true]);
    }

    #[test]
    fn taylor_data() {
        let c = CyclotomicCoefficients::new("3_1", MirrorConvention::Standard, vec![LaurentPolynomial::one(), lp(&[(-2, -1)])]);
        let t = cyclotomic_taylor(&c, 3);
        assert_eq!(*t[1].coeff(0), -1);
        assert_eq!(*t[1].coeff(1), 2);
        assert_eq!(*t[1].coeff(2), -2);
        assert_eq!(*t[0].coeff(1), 0);
    }
}
