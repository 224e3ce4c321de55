//! Laurent polynomials in one variable with exact rational coefficients.
//!
//! The canonical form stores only nonzero coefficients, so structural
//! equality is mathematical equality and the zero polynomial has no terms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        Self::monomial(0, c)
    }

    /// `c * q^e`.
    pub fn monomial(e: i64, c: impl Into<Rational>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// The variable `q` itself.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<Rational>,
    {
        let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c.into();
        }
        map.retain(|_, c| *c != 0);
        Self { terms: map }
    }

    /// Builds from a dense coefficient vector whose first entry is the
    /// coefficient of `q^offset`.
    pub fn from_dense(offset: i64, coeffs: Vec<Rational>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(i, c)| (offset + i as i64, c))
            .collect();
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| *c == 1)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Extreme exponents carrying nonzero coefficients.
    pub fn degrees(&self) -> Result<(i64, i64)> {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => Ok((lo, hi)),
            _ => Err(Error::ZeroPolynomial),
        }
    }

    /// `maxdeg - mindeg`, zero for the zero polynomial.
    pub fn span(&self) -> i64 {
        self.degrees().map(|(lo, hi)| hi - lo).unwrap_or(0)
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> Rational {
        let mut s = Rational::new();
        for c in self.terms.values() {
            s += c.clone().abs();
        }
        s
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| *c.denom() == 1)
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn mirror(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Substitutes `q -> q^k` for a nonzero integer `k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitution q -> q^0 is not a ring map on Laurent polynomials");
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if *s == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, Rational::from(c * s)))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Value at `q = x` for a nonzero rational `x`.
    pub fn eval_rational(&self, x: &Rational) -> Rational {
        assert!(*x != 0, "evaluation at q = 0");
        let mut s = Rational::new();
        for (e, c) in &self.terms {
            let p = pow_rational(x, *e);
            s += p * c;
        }
        s
    }

    /// Value at `q = 1`, the sum of the coefficients.
    pub fn eval_one(&self) -> Rational {
        let mut s = Rational::new();
        for c in self.terms.values() {
            s += c;
        }
        s
    }

    /// Dense coefficients from `mindeg` to `maxdeg`.
    pub fn to_dense(&self) -> Option<(i64, Vec<Rational>)> {
        let (lo, hi) = self.degrees().ok()?;
        let mut v = vec![Rational::new(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        Some((lo, v))
    }

    /// Exact quotient `self / divisor`, failing when the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (dlo, dhi) = divisor.degrees()?;
        let Some((alo, mut rem)) = self.to_dense() else {
            return Ok(Self::zero());
        };
        let ahi = alo + rem.len() as i64 - 1;
        if ahi - alo < dhi - dlo {
            return Err(Error::InexactDivision(format!(
                "span {} below divisor span {}",
                ahi - alo,
                dhi - dlo
            )));
        }
        let (_, dense_div) = divisor.to_dense().expect("nonzero divisor");
        let lead = dense_div.last().expect("nonzero divisor").clone();
        let dspan = dense_div.len() - 1;
        let qlen = rem.len() - dspan;
        let mut quot = vec![Rational::new(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + dspan];
            if *top == 0 {
                continue;
            }
            let c = Rational::from(top / &lead);
            for (j, d) in dense_div.iter().enumerate() {
                if *d != 0 {
                    rem[i + j] -= Rational::from(&c * d);
                }
            }
            quot[i] = c;
        }
        if let Some(pos) = rem.iter().position(|c| *c != 0) {
            return Err(Error::InexactDivision(format!(
                "nonzero remainder at q^{}",
                alo + pos as i64
            )));
        }
        Ok(Self::from_dense(alo - dlo, quot))
    }

    /// Coefficients as integers, when all are integral.
    pub fn integer_coefficients(&self) -> Option<Vec<(i64, Integer)>> {
        self.terms
            .iter()
            .map(|(e, c)| (*c.denom() == 1).then(|| (*e, c.numer().clone())))
            .collect()
    }
}

pub(crate) fn pow_rational(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 {
        x.clone().recip()
    } else {
        x.clone()
    };
    let mut r = Rational::from(1);
    let mut b = base;
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            r *= &b;
        }
        k >>= 1;
        if k > 0 {
            b = Rational::from(&b * &b);
        }
    }
    r
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = *c < 0;
            let abs = c.clone().abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = abs == 1;
            match (*e, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}*q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{abs}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let entry = terms.entry(*e).or_default();
            *entry += c;
            if *entry == 0 {
                terms.remove(e);
            }
        }
        LaurentPolynomial { terms }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let entry = terms.entry(*e).or_default();
            *entry -= c;
            if *entry == 0 {
                terms.remove(e);
            }
        }
        LaurentPolynomial { terms }
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, Rational::from(-c))).collect(),
        }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let (Some((alo, a)), Some((blo, b))) = (self.to_dense(), rhs.to_dense()) else {
            return LaurentPolynomial::zero();
        };
        // Integer inputs take the cheaper Integer accumulator.
        if self.is_integral() && rhs.is_integral() {
            let mut acc = vec![Integer::new(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                let x = x.numer();
                for (j, y) in b.iter().enumerate() {
                    if *y != 0 {
                        acc[i + j] += x * y.numer();
                    }
                }
            }
            return LaurentPolynomial::from_dense(
                alo + blo,
                acc.into_iter().map(Rational::from).collect(),
            );
        }
        let mut acc = vec![Rational::new(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if *y != 0 {
                    acc[i + j] += Rational::from(x * y);
                }
            }
        }
        LaurentPolynomial::from_dense(alo + blo, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl std::iter::Sum for LaurentPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    terms: Vec<(i64, String)>,
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentRepr {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, format_rational(c)))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = LaurentRepr::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for (e, s) in repr.terms {
            terms.push((e, parse_rational(&s).map_err(D::Error::custom)?));
        }
        Ok(Self::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().map(|&(e, c)| (e, c)))
    }

    fn trefoil_j2() -> LaurentPolynomial {
        lp(&[(-4, -1), (-3, 1), (-1, 1)])
    }

    #[test]
    fn difference_of_squares() {
        let a = lp(&[(1, 1), (-1, -1)]);
        let b = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(&a * &b, lp(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn zero_annihilates() {
        let p = lp(&[(3, 2), (-5, 7)]);
        assert!((&LaurentPolynomial::zero() * &p).is_zero());
    }

    #[test]
    fn square_of_q_plus_one_plus_inverse() {
        let p = lp(&[(1, 1), (0, 1), (-1, 1)]);
        assert_eq!(p.pow(2), lp(&[(2, 1), (1, 2), (0, 3), (-1, 2), (-2, 1)]));
    }

    #[test]
    fn rational_multiplication() {
        let a = LaurentPolynomial::from_terms([(0, Rational::from((1, 2))), (1, Rational::from(1))]);
        let b = LaurentPolynomial::from_terms([(0, Rational::from((2, 3)))]);
        let c = &a * &b;
        assert_eq!(c.coeff(0), Rational::from((1, 3)));
        assert_eq!(c.coeff(1), Rational::from((2, 3)));
    }

    #[test]
    fn exact_division_examples() {
        let num = lp(&[(2, 1), (-2, -1)]);
        let den = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(num.exact_div(&den).unwrap(), lp(&[(1, 1), (-1, 1)]));

        let p = lp(&[(2, 1), (-2, 1), (1, -1), (-1, -1)]);
        assert_eq!(p.exact_div(&p).unwrap(), LaurentPolynomial::one());

        let err = lp(&[(1, 1), (0, 1)]).exact_div(&lp(&[(1, 1), (0, -1)]));
        assert!(matches!(err, Err(Error::InexactDivision(_))));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            LaurentPolynomial::one().exact_div(&LaurentPolynomial::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn l1_norms() {
        assert_eq!(lp(&[(1, 1), (-1, -1)]).l1_norm(), 2);
        assert_eq!(LaurentPolynomial::zero().l1_norm(), 0);
        assert_eq!(trefoil_j2().l1_norm(), 3);
    }

    #[test]
    fn degree_reads() {
        assert_eq!(lp(&[(3, 1), (-2, 1)]).degrees().unwrap(), (-2, 3));
        assert_eq!(LaurentPolynomial::constant(5).degrees().unwrap(), (0, 0));
        assert_eq!(trefoil_j2().degrees().unwrap(), (-4, -1));
        assert_eq!(LaurentPolynomial::zero().degrees(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let p = lp(&[(1, 1), (1, -1), (2, 0)]);
        assert!(p.is_zero());
        assert_eq!(p, LaurentPolynomial::zero());
    }

    #[test]
    fn json_shape() {
        let p = LaurentPolynomial::from_terms([(-1, Rational::from((-3, 2))), (2, Rational::from(1))]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"terms":[[-1,"-3/2"],[2,"1/1"]]}"#);
        let back: LaurentPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(trefoil_j2().to_string(), "q^-1 + q^-3 - q^-4");
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = LaurentPolynomial> {
        prop::collection::vec((-4i64..=4, -3i64..=3), 0..5).prop_map(|t| lp(&t))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn division_undoes_multiplication(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
        }

        #[test]
        fn l1_norm_is_submultiplicative(a in small_poly(), b in small_poly()) {
            prop_assert!((&a * &b).l1_norm() <= a.l1_norm() * b.l1_norm());
        }

        #[test]
        fn json_round_trip(a in small_poly()) {
            let s = serde_json::to_string(&a).unwrap();
            let back: LaurentPolynomial = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
