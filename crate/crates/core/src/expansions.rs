//! Loop expansion `J_{K,n}(e^h) = Σ_k R_{K,k}(nh) h^k` extracted exactly from
//! colored Jones tables, with the checks that tie it to the Alexander
//! polynomial and to the cyclotomic coefficients.
//!
//! Substituting `h → α/n`, the `α^m` coefficient of `J_{K,n}(e^{α/n})` is a
//! polynomial of degree `m` in `1/n` whose `n^{-k}` coefficient is
//! `coeff(R_{K,k}, x^{m-k})`. Fitting that polynomial on `m + 1` colors
//! recovers the `R_{K,k}`; further colors must land on it exactly.

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CyclotomicCoefficients;
use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::rational::{eval_poly, format_rational, interpolate_exact, solve_linear};
use crate::series::{BivariateSeries, TruncatedSeries};

/// Taylor coefficients of `J_{K,n}(e^{h/n})` in `h`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaledJonesTaylor {
    pub n: u32,
    pub coeffs: TruncatedSeries,
}

pub fn scaled_jones_taylor(jones: &LaurentPolynomial, n: u32, order: usize) -> Result<ScaledJonesTaylor> {
    if n == 0 {
        return Err(Error::InvalidArgument("color n must be at least 1".into()));
    }
    Ok(ScaledJonesTaylor {
        n,
        coeffs: TruncatedSeries::of_laurent_at_exp_scaled(jones, order, n),
    })
}

/// Delta, the loop series `R_{K,k}` and whatever loop polynomials have been
/// reconstructed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopData {
    pub knot: String,
    pub delta: LaurentPolynomial,
    /// `r[k]` is the series of `R_{K,k}(x)`, known through `x^{M-k}`.
    pub r: Vec<TruncatedSeries>,
    /// `p[k]` is `P_{K,k}(q)` once reconstructed.
    pub p: Vec<Option<LaurentPolynomial>>,
    pub series_order: usize,
}

impl LoopData {
    pub fn loops(&self) -> usize {
        self.r.len()
    }

    /// `R_{K,k}` evaluated exactly from `P_{K,k}`, if known.
    pub fn loop_polynomial(&self, k: usize) -> Option<&LaurentPolynomial> {
        self.p.get(k).and_then(|p| p.as_ref())
    }
}

/// One `h^m` fit: the `1/n` polynomial and the colors it was checked on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderFit {
    pub m: usize,
    pub fitted_colors: Vec<u32>,
    pub held_out_colors: Vec<u32>,
    /// Coefficient of `n^{-k}` for `k = 0..=m`, as `"num/den"`.
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub orders: Vec<OrderFit>,
}

/// Fits the `h^m` coefficients for `m ≤ order` and fills `R`. Needs at
/// least `order + 3` distinct colors so every fit has two held-out checks.
pub fn extract_loop_series(
    knot: impl Into<String>,
    delta: &LaurentPolynomial,
    tables: &[ScaledJonesTaylor],
    order: usize,
) -> Result<(LoopData, FitReport)> {
    let mut tables: Vec<&ScaledJonesTaylor> = tables.iter().collect();
    tables.sort_by_key(|t| t.n);
    tables.dedup_by_key(|t| t.n);
    if tables.len() < order + 3 {
        return Err(Error::InvalidArgument(format!(
            "order {order} needs {} distinct colors, got {}",
            order + 3,
            tables.len()
        )));
    }
    if let Some(t) = tables.iter().find(|t| t.coeffs.order() < order) {
        return Err(Error::InvalidArgument(format!(
            "color {} is expanded only to h^{}",
            t.n,
            t.coeffs.order()
        )));
    }
    let u: Vec<Rational> = tables.iter().map(|t| Rational::from((1, t.n))).collect();
    let mut r_coeffs: Vec<Vec<Rational>> = (0..=order).map(|k| vec![Rational::new(); order - k + 1]).collect();
    let mut fits = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let ys: Vec<Rational> = tables.iter().map(|t| t.coeffs.coeff(m).clone()).collect();
        let poly = interpolate_exact(&u[..=m], &ys[..=m]);
        for i in m + 1..tables.len() {
            let predicted = eval_poly(&poly, &u[i]);
            if predicted != ys[i] {
                return Err(Error::InconsistentFit {
                    order: m,
                    color: tables[i].n,
                    residual: format_rational(&Rational::from(&ys[i] - &predicted)),
                });
            }
        }
        for (k, c) in poly.iter().enumerate() {
            r_coeffs[k][m - k] = c.clone();
        }
        fits.push(OrderFit {
            m,
            fitted_colors: tables[..=m].iter().map(|t| t.n).collect(),
            held_out_colors: tables[m + 1..].iter().map(|t| t.n).collect(),
            coefficients: poly.iter().map(format_rational).collect(),
        });
    }
    let r: Vec<TruncatedSeries> = r_coeffs.into_iter().map(TruncatedSeries::from_coeffs).collect();
    let loops = r.len();
    let data = LoopData {
        knot: knot.into(),
        delta: delta.clone(),
        r,
        p: vec![None; loops],
        series_order: order,
    };
    Ok((data, FitReport { orders: fits }))
}

/// Convenience: expands `J_{K,1..}` (index `i` holds color `i + 1`) and fits.
pub fn loop_data_from_jones(
    knot: impl Into<String>,
    delta: &LaurentPolynomial,
    jones: &[LaurentPolynomial],
    order: usize,
) -> Result<(LoopData, FitReport)> {
    let tables = jones
        .iter()
        .enumerate()
        .map(|(i, j)| scaled_jones_taylor(j, i as u32 + 1, order))
        .collect::<Result<Vec<_>>>()?;
    extract_loop_series(knot, delta, &tables, order)
}

/// Residuals `coeff(R_{K,0}, x^m) − coeff(1/Δ(e^x), x^m)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MmrReport {
    pub order: usize,
    pub residuals: Vec<String>,
    pub passed: bool,
    pub first_nonzero: Option<usize>,
}

/// Compares `R_{K,0}` with the series of `1/delta(e^x)`; `delta` is normally
/// `loop.delta` but may be swapped for a control.
pub fn mmr_check(data: &LoopData, delta: &LaurentPolynomial, order: usize) -> Result<MmrReport> {
    let r0 = data.r.first().ok_or_else(|| Error::InvalidArgument("no loop series".into()))?;
    if r0.order() < order {
        return Err(Error::InsufficientOrder {
            needed: order,
            available: r0.order(),
        });
    }
    let inv = TruncatedSeries::of_laurent_at_exp(delta, order).invert()?;
    let residuals: Vec<Rational> = (0..=order)
        .map(|m| Rational::from(r0.coeff(m) - inv.coeff(m)))
        .collect();
    let first_nonzero = residuals.iter().position(|r| *r != 0);
    Ok(MmrReport {
        order,
        residuals: residuals.iter().map(format_rational).collect(),
        passed: first_nonzero.is_none(),
        first_nonzero,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reconstruction {
    pub loop_order: usize,
    pub polynomial: LaurentPolynomial,
    /// Exponent window `[-window, window]` that succeeded.
    pub window: i64,
    /// Series orders beyond the `2·window + 1` used to solve that matched.
    pub extra_orders_checked: usize,
}

/// Finds `P_{K,k}` with `P(e^x) = R_{K,k}(x) Δ(e^x)^{2k+1}` by solving for
/// exponents in `[-D, D]` and checking at least `min_extra` further orders.
/// The window starts at `(k + 1)·span(Δ)` (at least 1) and doubles up to
/// `cap`.
pub fn reconstruct_loop_polynomial(
    data: &LoopData,
    k: usize,
    min_extra: usize,
    cap: i64,
) -> Result<Reconstruction> {
    let rk = data
        .r
        .get(k)
        .ok_or_else(|| Error::InvalidArgument(format!("loop order {k} was not extracted")))?;
    let avail = rk.order();
    let delta_series = TruncatedSeries::of_laurent_at_exp(&data.delta, avail);
    let target = rk * &delta_series.pow(2 * k as u32 + 1);

    let mut d = ((k as i64 + 1) * data.delta.span()).max(1);
    loop {
        if d > cap {
            return Err(Error::NoPolynomialInWindow { loop_order: k, cap });
        }
        let unknowns = 2 * d as usize + 1;
        if unknowns + min_extra > avail + 1 {
            return Err(Error::InsufficientOrder {
                needed: unknowns + min_extra - 1,
                available: avail,
            });
        }
        let exps: Vec<i64> = (-d..=d).collect();
        let row = |i: usize| -> Vec<Rational> {
            let fact = Rational::from(crate::rational::factorial(i as u32));
            exps.iter()
                .map(|&e| Rational::from(rug::Integer::from(rug::Integer::i_pow_u(e as i32, i as u32))) / &fact)
                .collect()
        };
        let a: Vec<Vec<Rational>> = (0..unknowns).map(row).collect();
        let b: Vec<Rational> = (0..unknowns).map(|i| target.coeff(i).clone()).collect();
        let x = solve_linear(a, b).expect("exponential Vandermonde systems are nonsingular");
        let consistent = (unknowns..=avail).all(|i| {
            let lhs: Rational = row(i).iter().zip(&x).map(|(a, c)| Rational::from(a * c)).sum();
            lhs == *target.coeff(i)
        });
        if consistent {
            let polynomial = LaurentPolynomial::from_terms(exps.iter().copied().zip(x));
            return Ok(Reconstruction {
                loop_order: k,
                polynomial,
                window: d,
                extra_orders_checked: avail + 1 - unknowns,
            });
        }
        d *= 2;
    }
}

/// Reconstructs `P_{K,0..=loops}` into `data.p`, stopping at the first failure.
pub fn reconstruct_all(data: &mut LoopData, loops: usize, min_extra: usize, cap: i64) -> Vec<Result<Reconstruction>> {
    let mut out = Vec::new();
    for k in 0..=loops.min(data.loops().saturating_sub(1)) {
        let r = reconstruct_loop_polynomial(data, k, min_extra, cap);
        if let Ok(rec) = &r {
            data.p[k] = Some(rec.polynomial.clone());
        }
        let failed = r.is_err();
        out.push(r);
        if failed {
            break;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub loop_order: usize,
    pub checked_through: usize,
    pub first_failure: Option<usize>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub identities: Vec<IdentityCheck>,
    pub passed: bool,
}

/// Right-hand sides of the four explicit identities, with `z² = e^x − 2 + e^{−x}`
/// and `s(l) = l(l+1)(2l+1)/6`:
///
/// ```text
/// R_0 = Σ ⟨C_l⟩_0 z^{2l}               R_1 = Σ ⟨C_l⟩_1 z^{2l}
/// R_2 = Σ ⟨C_l⟩_2 z^{2l} − Σ ⟨C_l⟩_0 s(l) z^{2l−2}
/// R_3 = Σ ⟨C_l⟩_3 z^{2l} − Σ ⟨C_l⟩_1 s(l) z^{2l−2}
/// ```
pub fn lemma_identity_rhs(taylor: &[TruncatedSeries], k: usize, order: usize) -> Result<TruncatedSeries> {
    if k > 3 {
        return Err(Error::InvalidArgument("explicit identities exist for k ≤ 3".into()));
    }
    let needed_l = order / 2 + 1;
    if taylor.len() <= needed_l {
        return Err(Error::InsufficientCoefficients {
            needed: needed_l,
            available: taylor.len().saturating_sub(1),
        });
    }
    if let Some(t) = taylor.iter().find(|t| t.order() < k) {
        return Err(Error::InvalidArgument(format!("cyclotomic Taylor data only to order {}", t.order())));
    }
    let z2 = TruncatedSeries::z_squared(order);
    let mut sum = TruncatedSeries::zero(order);
    // z^{2l-2} and z^{2l}
    let mut lower = TruncatedSeries::zero(order);
    let mut z_pow = TruncatedSeries::one(order);
    for (l, t) in taylor.iter().enumerate().take(needed_l + 1) {
        sum = &sum + &z_pow.scale(t.coeff(k));
        if k >= 2 && l >= 1 {
            let l = l as i64;
            let s = Rational::from((l * (l + 1) * (2 * l + 1), 6));
            sum = &sum - &lower.scale(&Rational::from(&s * t.coeff(k - 2)));
        }
        lower = z_pow.clone();
        z_pow = &z_pow * &z2;
    }
    Ok(sum)
}

/// Checks the identities for `R_0..R_3` against the fitted loop series
/// through `x^order` (or as far as each `R_k` is known).
pub fn lemma_compare_check(taylor: &[TruncatedSeries], data: &LoopData, order: usize) -> Result<LemmaReport> {
    let mut identities = Vec::new();
    for k in 0..=3.min(data.loops().saturating_sub(1)) {
        let through = order.min(data.r[k].order());
        let rhs = lemma_identity_rhs(taylor, k, through)?;
        let first_failure = (0..=through).find(|&i| rhs.coeff(i) != data.r[k].coeff(i));
        identities.push(IdentityCheck {
            loop_order: k,
            checked_through: through,
            first_failure,
            passed: first_failure.is_none(),
        });
    }
    let passed = !identities.is_empty() && identities.iter().all(|i| i.passed);
    Ok(LemmaReport { identities, passed })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BivariateReport {
    pub x_order: usize,
    pub h_order: usize,
    /// Lowest-total-degree `(i, j)` with a nonzero `x^i h^j` residual.
    pub first_nonzero: Option<(usize, usize)>,
    pub passed: bool,
}

/// Compares `Σ_k R_{K,k}(x) h^k` with
/// `Σ_l C_{K,l}(e^h) Π_{j=1}^l (z(x)² − z(jh)²)` in `ℚ[[x, h]]`.
pub fn lemma_compare_full(
    cyclo: &CyclotomicCoefficients,
    data: &LoopData,
    x_order: usize,
    h_order: usize,
) -> Result<BivariateReport> {
    if data.loops() <= h_order {
        return Err(Error::InsufficientOrder {
            needed: h_order,
            available: data.loops().saturating_sub(1),
        });
    }
    let mut lhs = BivariateSeries::zero(x_order, h_order);
    for (k, rk) in data.r.iter().enumerate().take(h_order + 1) {
        if rk.order() < x_order {
            return Err(Error::InsufficientOrder {
                needed: x_order + k,
                available: data.series_order,
            });
        }
        for i in 0..=x_order {
            *lhs.coeff_mut(i, k) = rk.coeff(i).clone();
        }
    }

    // every factor has total degree ≥ 2
    let l_max = (x_order + h_order) / 2;
    if cyclo.coeffs.len() <= l_max {
        return Err(Error::InsufficientCoefficients {
            needed: l_max,
            available: cyclo.k_max(),
        });
    }
    let z2 = BivariateSeries::from_x_series(&TruncatedSeries::z_squared(x_order), x_order, h_order);
    let mut rhs = BivariateSeries::zero(x_order, h_order);
    let mut product = BivariateSeries::one(x_order, h_order);
    for l in 0..=l_max {
        if l > 0 {
            let j = l as i64;
            let wj = LaurentPolynomial::from_terms([(j, 1), (0, -2), (-j, 1)]);
            let wj = BivariateSeries::from_h_series(&TruncatedSeries::of_laurent_at_exp(&wj, h_order), x_order, h_order);
            product = product.mul(&z2.sub(&wj));
        }
        let cl = TruncatedSeries::of_laurent_at_exp(&cyclo.coeffs[l], h_order);
        let cl = BivariateSeries::from_h_series(&cl, x_order, h_order);
        rhs.add_assign(&cl.mul(&product));
    }
    let first_nonzero = lhs.sub(&rhs).first_nonzero();
    Ok(BivariateReport {
        x_order,
        h_order,
        first_nonzero,
        passed: first_nonzero.is_none(),
    })
}
