//! Complex numbers at a fixed binary precision carrying a first-order
//! bound on their accumulated error.
//!
//! Every operation rounds to the working precision and grows the radius by
//! the propagated input radii plus a rounding term of a few ulps of the
//! result. The radius is kept in `f64`; it is a bound on `|true - value|`.

use std::fmt;

use rug::float::Constant;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;

pub const DEFAULT_PRECISION: u32 = 128;

#[derive(Clone)]
pub struct PrecisionComplex {
    re: Float,
    im: Float,
    radius: f64,
}

impl PrecisionComplex {
    pub fn zero(prec: u32) -> Self {
        Self::from_f64(0.0, 0.0, prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(1.0, 0.0, prec)
    }

    /// Exact construction from two doubles (no rounding at `prec >= 53`).
    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
            radius: 0.0,
        }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let re = Float::with_val(prec, r);
        let radius = ulp_bound(prec, re.to_f64().abs());
        Self {
            re,
            im: Float::with_val(prec, 0),
            radius,
        }
    }

    pub fn from_parts(re: Float, im: Float, radius: f64) -> Self {
        assert_eq!(re.prec(), im.prec(), "mixed component precisions");
        assert!(radius >= 0.0, "negative error radius");
        Self { re, im, radius }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn abs_f64(&self) -> f64 {
        let (a, b) = self.to_f64();
        a.hypot(b)
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    /// Adds an external error contribution (truncation tails and the like).
    pub fn with_extra_radius(mut self, extra: f64) -> Self {
        self.radius += extra;
        self
    }

    /// Errors unless the value is certified to absolute tolerance `tol`.
    pub fn certify(&self, tol: f64) -> Result<()> {
        if self.radius.is_finite() && self.radius < tol {
            Ok(())
        } else {
            Err(Error::PrecisionExhausted {
                radius: self.radius,
                tolerance: tol,
            })
        }
    }

    /// True when `|self - target| < tol` is certified: the radius must be
    /// below `tol / 2` and the computed distance plus the radius below `tol`.
    pub fn within(&self, target: &PrecisionComplex, tol: f64) -> Result<bool> {
        let d = self.sub(target);
        if d.radius >= tol / 2.0 {
            return Err(Error::PrecisionExhausted {
                radius: d.radius,
                tolerance: tol / 2.0,
            });
        }
        Ok(d.abs_f64() + d.radius < tol)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec();
        let re = Float::with_val(prec, &self.re + &rhs.re);
        let im = Float::with_val(prec, &self.im + &rhs.im);
        let radius = self.radius + rhs.radius + rounding(&re, &im);
        Self { re, im, radius }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let prec = self.prec();
        let re = Float::with_val(prec, &self.re - &rhs.re);
        let im = Float::with_val(prec, &self.im - &rhs.im);
        let radius = self.radius + rhs.radius + rounding(&re, &im);
        Self { re, im, radius }
    }

    pub fn neg(&self) -> Self {
        Self {
            re: Float::with_val(self.prec(), -&self.re),
            im: Float::with_val(self.prec(), -&self.im),
            radius: self.radius,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let prec = self.prec();
        let ac = Float::with_val(prec, &self.re * &rhs.re);
        let bd = Float::with_val(prec, &self.im * &rhs.im);
        let ad = Float::with_val(prec, &self.re * &rhs.im);
        let bc = Float::with_val(prec, &self.im * &rhs.re);
        let re = Float::with_val(prec, &ac - &bd);
        let im = Float::with_val(prec, &ad + &bc);
        let (ma, mb) = (self.abs_f64(), rhs.abs_f64());
        let radius = ma * rhs.radius
            + mb * self.radius
            + self.radius * rhs.radius
            + 4.0 * ulp_bound(prec, ma * mb)
            + rounding(&re, &im);
        Self { re, im, radius }
    }

    pub fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }

    pub fn scale_f64(&self, s: f64) -> Self {
        self.mul(&Self::from_f64(s, 0.0, self.prec()))
    }

    pub fn recip(&self) -> Result<Self> {
        let prec = self.prec();
        let m = self.abs_f64();
        if m <= self.radius || m == 0.0 {
            return Err(Error::PrecisionExhausted {
                radius: self.radius,
                tolerance: m,
            });
        }
        let norm = Float::with_val(prec, self.re.square_ref()) + Float::with_val(prec, self.im.square_ref());
        let re = Float::with_val(prec, &self.re / &norm);
        let im = Float::with_val(prec, -Float::with_val(prec, &self.im / &norm));
        let radius = self.radius / (m * (m - self.radius)) + 4.0 * ulp_bound(prec, 1.0 / m);
        Ok(Self { re, im, radius })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.recip()?))
    }

    /// `e^{self}`.
    pub fn exp(&self) -> Self {
        let prec = self.prec();
        let mag = Float::with_val(prec, self.re.exp_ref());
        let (s, c) = Float::with_val(prec, &self.im).sin_cos(Float::new(prec));
        let re = Float::with_val(prec, &mag * &c);
        let im = Float::with_val(prec, &mag * &s);
        let m = mag.to_f64();
        // d/dz e^z = e^z, so input error scales by |e^z| (times e^radius).
        let radius = m * (self.radius.exp() - 1.0) + 8.0 * ulp_bound(prec, m);
        Self { re, im, radius }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Result<Self> {
        let prec = self.prec();
        let m = self.abs();
        if m.is_zero() {
            return Ok(Self::zero(prec));
        }
        // sqrt((|z| + re)/2) + i sign(im) sqrt((|z| - re)/2)
        let a = Float::with_val(prec, Float::with_val(prec, &m + &self.re) / 2u32).sqrt();
        let mut b = Float::with_val(prec, Float::with_val(prec, &m - &self.re) / 2u32).sqrt();
        if self.im.is_sign_negative() {
            b = -b;
        }
        let mf = m.to_f64();
        if self.radius >= mf {
            return Err(Error::PrecisionExhausted {
                radius: self.radius,
                tolerance: mf,
            });
        }
        let root = mf.sqrt();
        let radius = self.radius / (root + (mf - self.radius).sqrt()) + 8.0 * ulp_bound(prec, root);
        Ok(Self { re: a, im: b, radius })
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut result = Self::one(self.prec());
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(result)
    }

    /// Natural logarithm of the modulus, as a plain double.
    pub fn ln_abs(&self) -> f64 {
        self.abs_f64().ln()
    }

    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, Constant::Pi)
    }
}

/// Bound on the rounding error of a correctly rounded complex result.
fn rounding(re: &Float, im: &Float) -> f64 {
    let prec = re.prec();
    ulp_bound(prec, re.to_f64().abs()) + ulp_bound(prec, im.to_f64().abs())
}

/// One ulp of a number of magnitude `m` at `prec` bits (rounded up).
fn ulp_bound(prec: u32, m: f64) -> f64 {
    if m == 0.0 {
        return 0.0;
    }
    m * 2f64.powi(1 - prec as i32)
}

impl fmt::Debug for PrecisionComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PrecisionComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "({re:.17e} {im:+.17e}i ± {:.2e})", self.radius)
    }
}

/// `p(q0)` with a tracked error radius, by Horner's rule over the dense
/// exponent range.
pub fn eval_complex(p: &LaurentPolynomial, q0: &PrecisionComplex) -> Result<PrecisionComplex> {
    let prec = q0.prec();
    if q0.abs_f64() <= q0.radius() {
        return Err(Error::InvalidArgument("evaluation point may be zero".into()));
    }
    let Some((lo, dense)) = p.to_dense() else {
        return Ok(PrecisionComplex::zero(prec));
    };
    let mut acc = PrecisionComplex::zero(prec);
    for c in dense.iter().rev() {
        acc = acc.mul(q0);
        if *c != 0 {
            acc = acc.add(&PrecisionComplex::from_rational(c, prec));
        }
    }
    Ok(acc.mul(&q0.powi(lo)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().map(|&(e, c)| (e, c)))
    }

    fn unit(theta: f64, prec: u32) -> PrecisionComplex {
        PrecisionComplex::from_f64(0.0, theta, prec).exp()
    }

    #[test]
    fn value_at_one_is_coefficient_sum() {
        let p = lp(&[(-4, -1), (-3, 1), (-1, 1), (5, 3)]);
        let v = eval_complex(&p, &PrecisionComplex::one(128)).unwrap();
        let (re, im) = v.to_f64();
        assert_eq!((re, im), (4.0, 0.0));
        assert!(v.radius() < 1e-30);
    }

    #[test]
    fn euler_identity() {
        let theta = 0.3;
        let p = lp(&[(1, 1), (-1, -1)]);
        let v = eval_complex(&p, &unit(theta, 128)).unwrap();
        let (re, im) = v.to_f64();
        assert!(re.abs() < 1e-30);
        assert!((im - 2.0 * theta.sin()).abs() < 1e-15);
        assert!(v.radius() < 1e-30);
    }

    #[test]
    fn doubled_precision_reference() {
        // trefoil n = 2 at q0 = e^{0.05 i / 2}
        let p = lp(&[(-4, -1), (-3, 1), (-1, 1)]);
        let lo = eval_complex(&p, &unit(0.025, 128)).unwrap();
        let hi = eval_complex(&p, &unit(0.025, 256)).unwrap();
        let hi_at_lo = PrecisionComplex::from_parts(
            Float::with_val(128, hi.re()),
            Float::with_val(128, hi.im()),
            hi.radius(),
        );
        let d = lo.sub(&hi_at_lo);
        assert!(d.abs_f64() <= lo.radius() + hi.radius() + 1e-38);
        assert!(lo.radius() < 1e-35);
    }

    #[test]
    fn radius_grows_with_lost_precision() {
        let x = PrecisionComplex::from_f64(1.0, 0.0, 64);
        let mut acc = x.clone();
        for _ in 0..100 {
            acc = acc.mul(&x).add(&x).sub(&x);
        }
        assert!(acc.radius() > 0.0);
        assert!(acc.certify(1e-10).is_ok());
        assert!(matches!(
            acc.certify(1e-40),
            Err(Error::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn reciprocal_and_division() {
        let z = PrecisionComplex::from_f64(3.0, 4.0, 128);
        let r = z.recip().unwrap();
        let (re, im) = r.to_f64();
        assert!((re - 0.12).abs() < 1e-16 && (im + 0.16).abs() < 1e-16);
        let one = z.mul(&r);
        assert!(one.within(&PrecisionComplex::one(128), 1e-30).unwrap());
        assert!(PrecisionComplex::zero(128).recip().is_err());
    }

    #[test]
    fn square_root_principal_branch() {
        let z = PrecisionComplex::from_f64(-4.0, 0.0, 128);
        let (re, im) = z.sqrt().unwrap().to_f64();
        assert!(re.abs() < 1e-30 && (im - 2.0).abs() < 1e-30);
        let w = PrecisionComplex::from_f64(0.0, -2.0, 128).sqrt().unwrap();
        let (re, im) = w.to_f64();
        assert!((re - 1.0).abs() < 1e-30 && (im + 1.0).abs() < 1e-30);
    }

    #[test]
    fn negative_powers() {
        // dyadic angles so that 8 * 0.125 is exact in binary
        let z = unit(0.125, 128);
        let a = z.powi(-8).unwrap();
        let b = unit(-1.0, 128);
        assert!(a.within(&b, 1e-30).unwrap());
    }

    #[test]
    fn within_refuses_uncertified_comparisons() {
        let a = PrecisionComplex::one(128).with_extra_radius(1e-3);
        assert!(matches!(
            a.within(&PrecisionComplex::one(128), 1e-3),
            Err(Error::PrecisionExhausted { .. })
        ));
    }
}
