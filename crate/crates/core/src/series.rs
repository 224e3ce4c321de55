//! Exact truncated power series in one and two variables.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::rational::{format_rational, inverse_factorials, parse_rational};

/// `c_0 + c_1 t + ... + c_M t^M + O(t^{M+1})` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::new(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(1, order)
    }

    pub fn constant(c: impl Into<Rational>, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c.into();
        s
    }

    /// The series `t` itself.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::from(1);
        }
        s
    }

    /// Coefficients for orders `0..coeffs.len()`; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series keeps at least its constant term");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^i`; zero past the truncation order is not implied,
    /// so out-of-range access panics.
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| Rational::from(c * s)).collect(),
        }
    }

    /// Multiplies by `t^k`, keeping the truncation order.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order());
        for i in 0..=self.order() {
            if i + k <= self.order() {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }

    /// Multiplicative inverse to the same truncation order.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if *c0 == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = c0.clone().recip();
        let m = self.order();
        let mut out = vec![Rational::new(); m + 1];
        out[0] = inv0.clone();
        for k in 1..=m {
            let mut s = Rational::new();
            for j in 1..=k {
                if self.coeffs[j] != 0 && out[k - j] != 0 {
                    s += Rational::from(&self.coeffs[j] * &out[k - j]);
                }
            }
            out[k] = -(s * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.order());
        for _ in 0..k {
            result = &result * self;
        }
        result
    }

    /// Taylor coefficients of `p(e^{t/scale})`: each monomial `c q^a`
    /// contributes `c (a/scale)^i / i!` to order `i`.
    pub fn of_laurent_at_exp_scaled(p: &LaurentPolynomial, order: usize, scale: u32) -> Self {
        assert!(scale >= 1);
        let inv_fact = inverse_factorials(order);
        let mut coeffs = vec![Rational::new(); order + 1];
        for (a, c) in p.terms() {
            let ratio = Rational::from((Integer::from(a), Integer::from(scale)));
            let mut power = Rational::from(1);
            for (i, slot) in coeffs.iter_mut().enumerate() {
                if i > 0 {
                    power *= &ratio;
                }
                *slot += Rational::from(&power * c) * &inv_fact[i];
            }
        }
        Self { coeffs }
    }

    /// Taylor coefficients of `p(e^t)`.
    pub fn of_laurent_at_exp(p: &LaurentPolynomial, order: usize) -> Self {
        Self::of_laurent_at_exp_scaled(p, order, 1)
    }

    /// `e^{ct}` for rational `c`.
    pub fn exp_linear(c: &Rational, order: usize) -> Self {
        let inv_fact = inverse_factorials(order);
        let mut power = Rational::from(1);
        let mut coeffs = Vec::with_capacity(order + 1);
        for (i, f) in inv_fact.iter().enumerate() {
            if i > 0 {
                power *= c;
            }
            coeffs.push(Rational::from(&power * f));
        }
        Self { coeffs }
    }

    /// `z^2 = e^t - 2 + e^{-t} = (e^{t/2} - e^{-t/2})^2`.
    pub fn z_squared(order: usize) -> Self {
        let two = Rational::from(2);
        let inv_fact = inverse_factorials(order);
        let coeffs = (0..=order)
            .map(|i| {
                if i >= 2 && i % 2 == 0 {
                    Rational::from(&two * &inv_fact[i])
                } else {
                    Rational::new()
                }
            })
            .collect();
        Self { coeffs }
    }

    fn combine(&self, rhs: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let m = self.order().min(rhs.order());
        Self {
            coeffs: (0..=m).map(|i| f(&self.coeffs[i], &rhs.coeffs[i])).collect(),
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.combine(rhs, |a, b| Rational::from(a + b))
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.combine(rhs, |a, b| Rational::from(a - b))
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let m = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::new(); m + 1];
        for (i, a) in self.coeffs.iter().take(m + 1).enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(m + 1 - i).enumerate() {
                if *b != 0 {
                    coeffs[i + j] += Rational::from(a * b);
                }
            }
        }
        TruncatedSeries { coeffs }
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            order: self.order(),
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(D::Error::custom(format!(
                "order {} needs {} coefficients, got {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(Self { coeffs })
    }
}

/// Dense bivariate series `sum a_{ij} x^i h^j` truncated to the rectangle
/// `i <= x_order`, `j <= h_order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BivariateSeries {
    x_order: usize,
    h_order: usize,
    coeffs: Vec<Rational>,
}

impl BivariateSeries {
    pub fn zero(x_order: usize, h_order: usize) -> Self {
        Self {
            x_order,
            h_order,
            coeffs: vec![Rational::new(); (x_order + 1) * (h_order + 1)],
        }
    }

    pub fn one(x_order: usize, h_order: usize) -> Self {
        let mut s = Self::zero(x_order, h_order);
        s.coeffs[0] = Rational::from(1);
        s
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.x_order, self.h_order)
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.h_order + 1) + j
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Rational {
        &self.coeffs[self.idx(i, j)]
    }

    pub fn coeff_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        let k = self.idx(i, j);
        &mut self.coeffs[k]
    }

    /// Embeds a series in `x` alone.
    pub fn from_x_series(s: &TruncatedSeries, x_order: usize, h_order: usize) -> Self {
        let mut out = Self::zero(x_order, h_order);
        for i in 0..=x_order.min(s.order()) {
            *out.coeff_mut(i, 0) = s.coeff(i).clone();
        }
        out
    }

    /// Embeds a series in `h` alone.
    pub fn from_h_series(s: &TruncatedSeries, x_order: usize, h_order: usize) -> Self {
        let mut out = Self::zero(x_order, h_order);
        for j in 0..=h_order.min(s.order()) {
            *out.coeff_mut(0, j) = s.coeff(j).clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        assert_eq!(self.orders(), rhs.orders());
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.orders(), rhs.orders());
        Self {
            x_order: self.x_order,
            h_order: self.h_order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| Rational::from(a - b))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.orders(), rhs.orders());
        let mut out = Self::zero(self.x_order, self.h_order);
        for i1 in 0..=self.x_order {
            for j1 in 0..=self.h_order {
                let a = self.coeff(i1, j1);
                if *a == 0 {
                    continue;
                }
                for i2 in 0..=self.x_order - i1 {
                    for j2 in 0..=self.h_order - j1 {
                        let b = rhs.coeff(i2, j2);
                        if *b != 0 {
                            *out.coeff_mut(i1 + i2, j1 + j2) += Rational::from(a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// The coefficient of `h^j` as a series in `x`.
    pub fn h_slice(&self, j: usize) -> TruncatedSeries {
        TruncatedSeries::from_coeffs((0..=self.x_order).map(|i| self.coeff(i, j).clone()).collect())
    }

    /// Lowest total degree `i + j` with a nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in 0..=self.x_order {
            for j in 0..=self.h_order {
                if *self.coeff(i, j) != 0 && best.is_none_or(|(bi, bj)| i + j < bi + bj) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}
