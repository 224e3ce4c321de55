//! Numerical checks of the small-angle behavior of `J_{K,n}(e^{α/n})`:
//! convergence to the loop expansion, boundedness, derivative limits, and
//! the growth constants that carve out the region of certified angles.

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::cyclotomic::CyclotomicCoefficients;
use crate::error::{Error, Result};
use crate::expansions::{LoopData, ScaledJonesTaylor};
use crate::fit::{fit_bound, loglog_slope, BoundFit};
use crate::jones::{colored_jones_numeric, MirrorConvention};
use crate::laurent::LaurentPolynomial;
use crate::precision::{eval_complex, PrecisionComplex};
use crate::rational::{factorial, format_rational, interpolate_exact, eval_poly};
use crate::series::TruncatedSeries;

/// Largest term ratio accepted when extrapolating the cyclotomic tail.
pub const TAIL_RATIO: f64 = 0.9;

/// Complex angles, never containing 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleGrid {
    pub points: Vec<(f64, f64)>,
    pub description: String,
}

impl AngleGrid {
    pub fn new(points: Vec<(f64, f64)>, description: impl Into<String>) -> Result<Self> {
        for &(re, im) in &points {
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::InvalidArgument(format!("non-finite angle ({re}, {im})")));
            }
            if re == 0.0 && im == 0.0 {
                return Err(Error::InvalidArgument("α = 0 is excluded from angle grids".into()));
            }
        }
        Ok(Self {
            points,
            description: description.into(),
        })
    }

    /// `α = i t` for each `t`.
    pub fn imaginary_axis(ts: &[f64]) -> Result<Self> {
        Self::new(ts.iter().map(|&t| (0.0, t)).collect(), format!("imaginary axis t = {ts:?}"))
    }

    /// `α = t · direction` for each `t`.
    pub fn ray(direction: (f64, f64), ts: &[f64]) -> Result<Self> {
        Self::new(
            ts.iter().map(|&t| (t * direction.0, t * direction.1)).collect(),
            format!("ray {direction:?} t = {ts:?}"),
        )
    }

    /// `rings` circles of radius `radius·j/rings`, `per_ring` points each.
    pub fn disk(radius: f64, rings: usize, per_ring: usize) -> Result<Self> {
        let mut pts = Vec::new();
        for j in 1..=rings {
            let r = radius * j as f64 / rings as f64;
            for i in 0..per_ring {
                // offset rings so points do not line up radially
                let theta = std::f64::consts::TAU * (i as f64 + 0.5 * (j % 2) as f64) / per_ring as f64;
                pts.push((r * theta.cos(), r * theta.sin()));
            }
        }
        Self::new(pts, format!("disk |α| ≤ {radius}, {rings} rings × {per_ring}"))
    }

    /// Imaginary axis `t ∈ {0.01, 0.02, 0.05}` plus a disk sample of radius 0.05.
    pub fn default_grid() -> Self {
        let mut g = Self::imaginary_axis(&[0.01, 0.02, 0.05]).expect("valid");
        let d = Self::disk(0.05, 2, 4).expect("valid");
        g.points.extend(d.points);
        g.description = "imaginary axis {0.01, 0.02, 0.05}i and disk |α| ≤ 0.05".into();
        g
    }

    /// Errors for the first point outside the region.
    pub fn check_region(&self, region: &RegionEstimate) -> Result<()> {
        match self.points.iter().find(|&&a| !region.contains(a)) {
            Some(a) => Err(Error::InvalidArgument(format!("angle {a:?} lies outside the estimated region"))),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalPath {
    ExactPoly,
    NumericSum,
    Cyclotomic,
}

/// Everything known about one knot that the evaluations can draw on.
#[derive(Clone, Debug)]
pub struct KnotContext {
    pub braid: BraidWord,
    pub convention: MirrorConvention,
    /// `jones[i]` is `J_{K,i+1}`.
    pub jones: Vec<LaurentPolynomial>,
    pub cyclo: Option<CyclotomicCoefficients>,
    pub delta: LaurentPolynomial,
    pub loops: Option<LoopData>,
    pub precision: u32,
}

impl KnotContext {
    pub fn name(&self) -> String {
        self.braid.name().unwrap_or("knot").to_string()
    }
}

pub fn complex(alpha: (f64, f64), prec: u32) -> PrecisionComplex {
    PrecisionComplex::from_f64(alpha.0, alpha.1, prec)
}

fn scaled_point(alpha: &PrecisionComplex, n: u32) -> Result<PrecisionComplex> {
    let n = PrecisionComplex::from_f64(n as f64, 0.0, alpha.prec());
    Ok(alpha.div(&n)?.exp())
}

/// `C_{n,k}(e^{α/n})` for `k = 0..=k_max`, from the product of factors
/// `e^α + e^{−α} − e^{jα/n} − e^{−jα/n}`.
pub fn kernel_values(alpha: &PrecisionComplex, n: u32, k_max: usize) -> Result<Vec<PrecisionComplex>> {
    let prec = alpha.prec();
    let e = alpha.exp();
    let big = e.add(&e.recip()?);
    let nn = PrecisionComplex::from_f64(n as f64, 0.0, prec);
    let step = alpha.div(&nn)?;
    let mut out = Vec::with_capacity(k_max + 1);
    let mut acc = PrecisionComplex::one(prec);
    out.push(acc.clone());
    for j in 1..=k_max.min(n as usize) {
        let qj = step.scale_f64(j as f64).exp();
        let f = big.sub(&qj).sub(&qj.recip()?);
        acc = acc.mul(&f);
        out.push(acc.clone());
    }
    Ok(out)
}

fn alpha_label(alpha: &PrecisionComplex) -> String {
    let (re, im) = alpha.to_f64();
    format!("{re}{im:+}i")
}

/// `Σ_k C_{n,k}(e^{α/n}) C_{K,k}(e^{α/n})` with the tail past the available
/// coefficients bounded from the last three terms.
pub fn cyclotomic_sum(c: &CyclotomicCoefficients, alpha: &PrecisionComplex, n: u32) -> Result<PrecisionComplex> {
    if n == 0 {
        return Err(Error::InvalidArgument("color n must be at least 1".into()));
    }
    let top = (n as usize - 1).min(c.k_max());
    let q0 = scaled_point(alpha, n)?;
    let kernel = kernel_values(alpha, n, top)?;
    let mut sum = PrecisionComplex::zero(alpha.prec());
    let mut mags = Vec::with_capacity(top + 1);
    for (k, ck) in c.coeffs.iter().enumerate().take(top + 1) {
        let term = kernel[k].mul(&eval_complex(ck, &q0)?);
        mags.push((term.abs_f64(), term.radius()));
        sum = sum.add(&term);
    }
    if n as usize - 1 <= c.k_max() {
        return Ok(sum);
    }
    let uncertified = |reason: String| Error::TailNotCertified {
        alpha: alpha_label(alpha),
        n,
        reason,
    };
    if mags.len() < 3 {
        return Err(uncertified("fewer than three terms available".into()));
    }
    let last = &mags[mags.len() - 3..];
    if last.iter().all(|&(m, r)| m <= r) {
        // the expansion has terminated
        return Ok(sum);
    }
    let ratio = (last[1].0 / last[0].0).max(last[2].0 / last[1].0);
    if !(ratio < TAIL_RATIO) {
        return Err(uncertified(format!("term ratio {ratio:.3} ≥ {TAIL_RATIO}")));
    }
    let tail = last[2].0 * ratio / (1.0 - ratio);
    Ok(sum.with_extra_radius(tail))
}

/// `J_{K,n}(e^{α/n})` along the requested path.
pub fn eval_scaled_jones(ctx: &KnotContext, alpha: &PrecisionComplex, n: u32, path: EvalPath) -> Result<PrecisionComplex> {
    if n == 0 {
        return Err(Error::InvalidArgument("color n must be at least 1".into()));
    }
    match path {
        EvalPath::ExactPoly => {
            let j = ctx.jones.get(n as usize - 1).ok_or_else(|| {
                Error::InvalidArgument(format!("exact J known only for n ≤ {}", ctx.jones.len()))
            })?;
            eval_complex(j, &scaled_point(alpha, n)?)
        }
        EvalPath::NumericSum => colored_jones_numeric(&ctx.braid, n, &scaled_point(alpha, n)?, ctx.convention),
        EvalPath::Cyclotomic => {
            let c = ctx
                .cyclo
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("no cyclotomic coefficients loaded".into()))?;
            cyclotomic_sum(c, alpha, n)
        }
    }
}

/// `R_{K,k}(α) = P_{K,k}(e^α) / Δ(e^α)^{2k+1}`.
pub fn loop_term(data: &LoopData, k: usize, alpha: &PrecisionComplex) -> Result<PrecisionComplex> {
    let p = data
        .loop_polynomial(k)
        .ok_or_else(|| Error::InvalidArgument(format!("P_{k} has not been reconstructed")))?;
    let e = alpha.exp();
    let num = eval_complex(p, &e)?;
    let den = eval_complex(&data.delta, &e)?.powi(2 * k as i64 + 1)?;
    num.div(&den)
}

/// `(n/α)^N (J_{K,n}(e^{α/n}) − Σ_{k<N} R_{K,k}(α) (α/n)^k)`.
pub fn residual(ctx: &KnotContext, alpha: &PrecisionComplex, n: u32, order: usize, path: EvalPath) -> Result<PrecisionComplex> {
    let j = eval_scaled_jones(ctx, alpha, n, path)?;
    residual_from_value(ctx, alpha, n, order, &j)
}

fn residual_from_value(
    ctx: &KnotContext,
    alpha: &PrecisionComplex,
    n: u32,
    order: usize,
    j: &PrecisionComplex,
) -> Result<PrecisionComplex> {
    let prec = alpha.prec();
    let data = ctx.loops.as_ref();
    let nn = PrecisionComplex::from_f64(n as f64, 0.0, prec);
    let a_over_n = alpha.div(&nn)?;
    let mut r = j.clone();
    let mut scale = PrecisionComplex::one(prec);
    for k in 0..order {
        let data = data.ok_or_else(|| Error::InvalidArgument("no loop data".into()))?;
        r = r.sub(&loop_term(data, k, alpha)?.mul(&scale));
        scale = scale.mul(&a_over_n);
    }
    r.div(&a_over_n.powi(order as i64)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub alpha: (f64, f64),
    pub n: u32,
    pub order: usize,
    pub value: (f64, f64),
    pub error_radius: f64,
    /// Radius below 1% of the magnitude.
    pub usable: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ResidualTable {
    pub knot: String,
    pub entries: Vec<ResidualEntry>,
}

impl ResidualTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("knot,alpha_re,alpha_im,n,N,residual_re,residual_im,error_radius\n");
        for e in &self.entries {
            s.push_str(&format!(
                "{},{:e},{:e},{},{},{:e},{:e},{:e}\n",
                self.knot, e.alpha.0, e.alpha.1, e.n, e.order, e.value.0, e.value.1, e.error_radius
            ));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaSummary {
    pub alpha: (f64, f64),
    /// `R_{K,N}(α)`, the predicted limit.
    pub target: (f64, f64),
    pub n_max: Option<u32>,
    pub discrepancy_at_max_n: Option<f64>,
    pub relative_discrepancy: Option<f64>,
    /// `-slope` of `log|r_N − target|` against `log n`.
    pub decay_order: Option<f64>,
    /// Every evaluated `r_N − target` is zero within its error radius.
    pub vanishing: bool,
    pub conclusive: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceScan {
    pub order: usize,
    pub path: EvalPath,
    pub table: ResidualTable,
    pub summaries: Vec<AlphaSummary>,
}

/// Residuals `r_N(n, α)` over the grid and colors, with their limits and
/// fitted decay orders. Points whose evaluation fails are recorded in the
/// summary notes, never dropped silently.
pub fn convergence_scan(
    ctx: &KnotContext,
    grid: &AngleGrid,
    n_list: &[u32],
    order: usize,
    path: EvalPath,
) -> Result<ConvergenceScan> {
    let prec = ctx.precision;
    let data = ctx.loops.as_ref();
    let mut table = ResidualTable {
        knot: ctx.name(),
        entries: Vec::new(),
    };
    let mut summaries = Vec::new();
    for &a in &grid.points {
        let alpha = complex(a, prec);
        let target = match data {
            Some(d) => loop_term(d, order, &alpha)?,
            None if order == 0 => eval_complex(&ctx.delta, &alpha.exp())?.recip()?,
            None => return Err(Error::InvalidArgument("no loop data".into())),
        };
        let mut notes = Vec::new();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let mut last: Option<(u32, f64, f64)> = None;
        let mut vanishing = true;
        for &n in n_list {
            match residual(ctx, &alpha, n, order, path) {
                Ok(r) => {
                    let usable = r.radius() < 0.01 * r.abs_f64();
                    table.entries.push(ResidualEntry {
                        alpha: a,
                        n,
                        order,
                        value: r.to_f64(),
                        error_radius: r.radius(),
                        usable,
                    });
                    let d = r.sub(&target);
                    vanishing &= d.abs_f64() <= d.radius();
                    if d.radius() < 0.01 * d.abs_f64() {
                        xs.push(n as f64);
                        ys.push(d.abs_f64());
                    } else {
                        notes.push(format!("n = {n}: difference not resolved (radius {:.2e})", d.radius()));
                    }
                    last = Some((n, d.abs_f64(), target.abs_f64()));
                }
                Err(e) => {
                    vanishing = false;
                    notes.push(format!("n = {n}: {e}"));
                }
            }
        }
        let vanishing = vanishing && last.is_some();
        let spans = xs.len() >= 4 && xs.last().unwrap() / xs[0] >= 8.0;
        let decay_order = if spans {
            loglog_slope(&xs, &ys).ok().map(|s| -s)
        } else {
            notes.push("fewer than 4 resolved colors spanning a factor 8".into());
            None
        };
        summaries.push(AlphaSummary {
            alpha: a,
            target: target.to_f64(),
            n_max: last.map(|l| l.0),
            discrepancy_at_max_n: last.map(|l| l.1),
            relative_discrepancy: last.and_then(|(_, d, t)| (t > 0.0).then_some(d / t)),
            decay_order,
            vanishing,
            conclusive: decay_order.is_some() || vanishing,
            notes,
        });
    }
    Ok(ConvergenceScan {
        order,
        path,
        table,
        summaries,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UncertifiedPoint {
    pub alpha: (f64, f64),
    pub n: u32,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundScan {
    pub max_abs: f64,
    pub argmax: Option<((f64, f64), u32)>,
    /// Largest `|J|` per color over the certified grid points.
    pub per_n_max: Vec<(u32, f64)>,
    /// Maximum attained at the largest color scanned.
    pub at_boundary: bool,
    pub uncertified: Vec<UncertifiedPoint>,
}

/// Empirical `max |J_{K,n}(e^{α/n})|` over the grid and colors.
pub fn uniform_bound_scan(ctx: &KnotContext, grid: &AngleGrid, n_list: &[u32], path: EvalPath) -> Result<BoundScan> {
    let mut per_n_max = Vec::new();
    let mut uncertified = Vec::new();
    let mut best: Option<((f64, f64), u32, f64)> = None;
    for &n in n_list {
        let mut m = None::<f64>;
        for &a in &grid.points {
            let alpha = complex(a, ctx.precision);
            match eval_scaled_jones(ctx, &alpha, n, path) {
                Ok(v) => {
                    let val = v.abs_f64() + v.radius();
                    m = Some(m.map_or(val, |x| x.max(val)));
                    if best.is_none_or(|b| val > b.2) {
                        best = Some((a, n, val));
                    }
                }
                Err(e @ (Error::TailNotCertified { .. } | Error::PrecisionExhausted { .. })) => {
                    uncertified.push(UncertifiedPoint {
                        alpha: a,
                        n,
                        reason: e.to_string(),
                    })
                }
                Err(e) => return Err(e),
            }
        }
        if let Some(m) = m {
            per_n_max.push((n, m));
        }
    }
    let n_top = n_list.iter().copied().max();
    Ok(BoundScan {
        max_abs: best.map_or(0.0, |b| b.2),
        argmax: best.map(|b| (b.0, b.1)),
        at_boundary: best.is_some_and(|b| Some(b.1) == n_top) && n_list.len() > 1,
        per_n_max,
        uncertified,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivativeLimit {
    pub m: usize,
    /// `(n, d^m/dα^m J_{K,n}(e^{α/n}) at 0)`.
    pub derivatives: Vec<(u32, String)>,
    pub limit: String,
    pub target: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivativeReport {
    pub limits: Vec<DerivativeLimit>,
    pub passed: bool,
}

/// The `m`-th derivative at `α = 0` is `m!` times the `h^m` coefficient of
/// the scaled expansion, a polynomial in `1/n` whose constant term is the
/// `n → ∞` limit. That limit must equal `m!·coeff(1/Δ(e^α), α^m)` exactly.
pub fn derivative_limit_check(
    tables: &[ScaledJonesTaylor],
    delta: &LaurentPolynomial,
    m_max: usize,
) -> Result<DerivativeReport> {
    let mut tables: Vec<&ScaledJonesTaylor> = tables.iter().collect();
    tables.sort_by_key(|t| t.n);
    if tables.len() < m_max + 1 {
        return Err(Error::InvalidArgument(format!("need {} colors, got {}", m_max + 1, tables.len())));
    }
    let inv = TruncatedSeries::of_laurent_at_exp(delta, m_max).invert()?;
    let mut limits = Vec::new();
    for m in 0..=m_max {
        let fact = Rational::from(factorial(m as u32));
        let u: Vec<Rational> = tables.iter().map(|t| Rational::from((1, t.n))).collect();
        let d: Vec<Rational> = tables.iter().map(|t| Rational::from(t.coeffs.coeff(m) * &fact)).collect();
        let poly = interpolate_exact(&u[..=m], &d[..=m]);
        for i in m + 1..tables.len() {
            if eval_poly(&poly, &u[i]) != d[i] {
                return Err(Error::InconsistentFit {
                    order: m,
                    color: tables[i].n,
                    residual: format_rational(&Rational::from(&d[i] - &eval_poly(&poly, &u[i]))),
                });
            }
        }
        let target = Rational::from(inv.coeff(m) * &fact);
        limits.push(DerivativeLimit {
            m,
            derivatives: tables.iter().zip(&d).map(|(t, v)| (t.n, format_rational(v))).collect(),
            limit: format_rational(&poly[0]),
            target: format_rational(&target),
            passed: poly[0] == target,
        });
    }
    let passed = limits.iter().all(|l| l.passed);
    Ok(DerivativeReport { limits, passed })
}

/// `log ‖C_{K,k}‖₁ ≈ C k + C' log k + c₀` over `k ≥ 1`.
pub fn norm_growth_fit(c: &CyclotomicCoefficients) -> Result<BoundFit> {
    let norms: Vec<f64> = c.coeffs.iter().skip(1).map(|p| p.l1_norm().to_f64()).collect();
    if norms.iter().all(|&x| x == norms[0]) {
        return Err(Error::DegenerateData(format!(
            "norm growth: ‖C_k‖₁ = {} for every k ≥ 1",
            norms.first().copied().unwrap_or(0.0)
        )));
    }
    if norms.len() < 4 {
        return Err(Error::DegenerateData("norm growth: fewer than 4 coefficients".into()));
    }
    if norms.contains(&0.0) {
        return Err(Error::DegenerateData("norm growth: vanishing coefficient".into()));
    }
    let rows: Vec<Vec<f64>> = (1..=norms.len()).map(|k| vec![k as f64, (k as f64).ln(), 1.0]).collect();
    let y: Vec<f64> = norms.iter().map(|x| x.ln()).collect();
    fit_bound("log ||C_k||_1 = C k + C' log k + c0", &["C", "C'", "c0"], &rows, &y)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeFit {
    pub mindeg: BoundFit,
    pub maxdeg: BoundFit,
    /// `max_k max(|mindeg|, |maxdeg|) / k²`, the constant in the `O(k²)` bound.
    pub quadratic_bound: f64,
}

/// `mindeg`, `maxdeg` of `C_{K,k}` against `a k² + b k + c`.
pub fn degree_growth_fit(c: &CyclotomicCoefficients) -> Result<DegreeFit> {
    let degs: Vec<(usize, i64, i64)> = c
        .coeffs
        .iter()
        .enumerate()
        .filter_map(|(k, p)| p.degrees().ok().map(|(lo, hi)| (k, lo, hi)))
        .collect();
    if degs.iter().all(|&(_, lo, hi)| lo == 0 && hi == 0) {
        return Err(Error::DegenerateData("degree growth: every coefficient is constant".into()));
    }
    if degs.len() < 4 {
        return Err(Error::DegenerateData("degree growth: fewer than 4 nonzero coefficients".into()));
    }
    let rows: Vec<Vec<f64>> = degs
        .iter()
        .map(|&(k, _, _)| vec![(k * k) as f64, k as f64, 1.0])
        .collect();
    let lo: Vec<f64> = degs.iter().map(|d| d.1 as f64).collect();
    let hi: Vec<f64> = degs.iter().map(|d| d.2 as f64).collect();
    let quadratic_bound = degs
        .iter()
        .filter(|d| d.0 > 0)
        .map(|&(k, l, h)| l.abs().max(h.abs()) as f64 / (k * k) as f64)
        .fold(0.0, f64::max);
    Ok(DegreeFit {
        mindeg: fit_bound("mindeg = a k^2 + b k + c", &["a", "b", "c"], &rows, &lo)?,
        maxdeg: fit_bound("maxdeg = a k^2 + b k + c", &["a", "b", "c"], &rows, &hi)?,
        quadratic_bound,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelSample {
    pub alpha: (f64, f64),
    pub n: u32,
    pub k: usize,
    pub log_abs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelReport {
    pub samples: Vec<KernelSample>,
    /// `log|C_{n,k}| ≈ C₁ k log|α| + C₂ log k + C₃` over `k ≥ 1`.
    pub fit: BoundFit,
    pub c1: f64,
    /// `C₁ log|α| < 0` for every sampled `|α| < 1`.
    pub slope_negative: bool,
    /// Largest `|C_{n,k+1}| / |C_{n,k}|` over the samples.
    pub max_step_ratio: f64,
    /// Largest max/min over `n` of `|C_{n,k}|` at fixed `(α, k)`.
    pub n_variation: f64,
    /// `|C_{n,0}| = 1` everywhere.
    pub k0_is_one: bool,
}

/// Samples `|C_{n,k}(e^{α/n})|` for `k < n` and fits the estimate constants.
pub fn kernel_estimate_check(n_list: &[u32], k_list: &[usize], alphas: &[(f64, f64)], prec: u32) -> Result<KernelReport> {
    let mut samples = Vec::new();
    let mut k0_is_one = true;
    let mut max_step_ratio = 0.0f64;
    let k_top = k_list.iter().copied().max().unwrap_or(0);
    for &a in alphas {
        let alpha = complex(a, prec);
        for &n in n_list {
            let vals = kernel_values(&alpha, n, k_top.min(n as usize - 1))?;
            k0_is_one &= vals[0].abs_f64() == 1.0;
            for w in vals.windows(2) {
                max_step_ratio = max_step_ratio.max(w[1].abs_f64() / w[0].abs_f64());
            }
            for &k in k_list {
                if k < vals.len() {
                    samples.push(KernelSample {
                        alpha: a,
                        n,
                        k,
                        log_abs: vals[k].abs_f64().ln(),
                    });
                }
            }
        }
    }
    let fit_pts: Vec<&KernelSample> = samples.iter().filter(|s| s.k >= 1).collect();
    let rows: Vec<Vec<f64>> = fit_pts
        .iter()
        .map(|s| {
            let la = s.alpha.0.hypot(s.alpha.1).ln();
            vec![s.k as f64 * la, (s.k as f64).ln(), 1.0]
        })
        .collect();
    let y: Vec<f64> = fit_pts.iter().map(|s| s.log_abs).collect();
    let fit = fit_bound("log|C_{n,k}| = C1 k log|a| + C2 log k + C3", &["C1", "C2", "C3"], &rows, &y)?;
    let c1 = fit.constants[0];
    let slope_negative = alphas
        .iter()
        .map(|a| a.0.hypot(a.1))
        .filter(|&r| r < 1.0)
        .all(|r| c1 * r.ln() < 0.0);

    let mut n_variation = 1.0f64;
    for &a in alphas {
        for &k in k_list {
            let vals: Vec<f64> = samples
                .iter()
                .filter(|s| s.alpha == a && s.k == k)
                .map(|s| s.log_abs)
                .collect();
            if vals.len() >= 2 {
                let (lo, hi) = vals.iter().fold((f64::MAX, f64::MIN), |(l, h), &v| (l.min(v), h.max(v)));
                n_variation = n_variation.max((hi - lo).exp());
            }
        }
    }
    Ok(KernelReport {
        samples,
        fit,
        c1,
        slope_negative,
        max_step_ratio,
        n_variation,
        k0_is_one,
    })
}

/// Constants of `C + C''|Re α| + C₁ log|α| < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionConstants {
    pub c: f64,
    pub c_double_prime: f64,
    pub c1: f64,
}

impl RegionConstants {
    /// `C` from the norm fit (0 when the norms do not grow), `C''` from the
    /// degree bound (0 when degrees are constant), `C₁` from the kernel fit.
    pub fn from_fits(norm: Option<&BoundFit>, degree: Option<&DegreeFit>, kernel: &KernelReport) -> Self {
        Self {
            c: norm.and_then(|f| f.constant("C")).unwrap_or(0.0).max(0.0),
            c_double_prime: degree.map_or(0.0, |d| d.quadratic_bound),
            c1: kernel.c1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionEstimate {
    pub constants: RegionConstants,
    /// Radius on the imaginary axis, `exp(−C/C₁)`.
    pub radius_at_zero_re: f64,
    /// `(|Re α|, radius)` samples on the boundary.
    pub boundary: Vec<(f64, f64)>,
    pub empty: bool,
    pub description: String,
}

impl RegionEstimate {
    pub fn radius(&self, re_abs: f64) -> f64 {
        let k = self.constants;
        if self.empty {
            return 0.0;
        }
        (-(k.c + k.c_double_prime * re_abs) / k.c1).exp()
    }

    pub fn contains(&self, alpha: (f64, f64)) -> bool {
        let k = self.constants;
        let m = alpha.0.hypot(alpha.1);
        !self.empty && m > 0.0 && k.c + k.c_double_prime * alpha.0.abs() + k.c1 * m.ln() < 0.0
    }
}

/// `|α| < exp(−(C + C''|Re α|)/C₁)`, sampled along its boundary. The region
/// is reported empty when `C₁ ≤ 0` (no neighborhood of 0 satisfies the
/// inequality) or when the radius underflows double precision.
pub fn region_estimate(constants: RegionConstants) -> RegionEstimate {
    let RegionConstants { c, c_double_prime, c1 } = constants;
    if !(c1 > 0.0) {
        return RegionEstimate {
            constants,
            radius_at_zero_re: 0.0,
            boundary: Vec::new(),
            empty: true,
            description: format!("C1 = {c1} is not positive: no neighborhood of 0"),
        };
    }
    let r0 = (-c / c1).exp();
    if !(r0 > f64::MIN_POSITIVE) {
        return RegionEstimate {
            constants,
            radius_at_zero_re: 0.0,
            boundary: Vec::new(),
            empty: true,
            description: format!("radius exp(-{c}/{c1}) underflows"),
        };
    }
    let mut boundary = Vec::new();
    for i in 0..=8 {
        let a = r0 * i as f64 / 8.0;
        let r = (-(c + c_double_prime * a) / c1).exp();
        if a <= r {
            boundary.push((a, r));
        }
    }
    RegionEstimate {
        constants,
        radius_at_zero_re: r0,
        boundary,
        empty: false,
        description: format!("|α| < exp(-({c} + {c_double_prime}|Re α|)/{c1})"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jones::colored_jones;

    fn unknot_ctx() -> KnotContext {
        KnotContext {
            braid: BraidWord::unknot(),
            convention: MirrorConvention::Standard,
            jones: vec![LaurentPolynomial::one(); 5],
            cyclo: Some(CyclotomicCoefficients::new(
                "0_1",
                MirrorConvention::Standard,
                [LaurentPolynomial::one()].into_iter().chain(vec![LaurentPolynomial::zero(); 4]).collect(),
            )),
            delta: LaurentPolynomial::one(),
            loops: None,
            precision: 128,
        }
    }

    #[test]
    fn grid_rejects_zero() {
        assert!(AngleGrid::new(vec![(0.0, 0.0)], "bad").is_err());
        let g = AngleGrid::default_grid();
        assert!(g.points.iter().all(|&(a, b)| a != 0.0 || b != 0.0));
        assert!(g.points.iter().all(|&(a, b)| a.hypot(b) <= 0.05 + 1e-15));
    }

    #[test]
    fn unknot_is_one_on_every_path() {
        let ctx = unknot_ctx();
        let alpha = complex((0.3, 0.7), 128);
        for path in [EvalPath::ExactPoly, EvalPath::NumericSum, EvalPath::Cyclotomic] {
            for n in [1, 3, 5] {
                let v = eval_scaled_jones(&ctx, &alpha, n, path).unwrap();
                assert!(v.within(&PrecisionComplex::one(128), 1e-30).unwrap(), "{path:?} {n}");
            }
        }
        let v = eval_scaled_jones(&ctx, &alpha, 400, EvalPath::Cyclotomic).unwrap();
        assert!(v.within(&PrecisionComplex::one(128), 1e-30).unwrap());
        let scan = uniform_bound_scan(&ctx, &AngleGrid::default_grid(), &[10, 100], EvalPath::Cyclotomic).unwrap();
        assert!((scan.max_abs - 1.0).abs() < 1e-30);
    }

    #[test]
    fn unknot_residual_vanishes() {
        let ctx = unknot_ctx();
        let grid = AngleGrid::imaginary_axis(&[0.05]).unwrap();
        let scan = convergence_scan(&ctx, &grid, &[200, 400, 800, 1600], 0, EvalPath::Cyclotomic).unwrap();
        let s = &scan.summaries[0];
        assert!(s.vanishing && s.conclusive && s.decay_order.is_none());
    }

    #[test]
    fn exact_path_requires_the_table() {
        let ctx = unknot_ctx();
        let alpha = complex((0.0, 0.05), 128);
        assert!(matches!(
            eval_scaled_jones(&ctx, &alpha, 9, EvalPath::ExactPoly),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn cyclotomic_path_matches_exact_for_trefoil() {
        let b = BraidWord::trefoil();
        let jones: Vec<_> = (1..=6).map(|n| colored_jones(&b, n, MirrorConvention::Standard).unwrap()).collect();
        let c = crate::cyclotomic::cyclotomic_from_jones("3_1", MirrorConvention::Standard, &jones, 5).unwrap();
        let ctx = KnotContext {
            braid: b,
            convention: MirrorConvention::Standard,
            jones,
            cyclo: Some(c),
            delta: LaurentPolynomial::from_terms([(1, 1), (0, -1), (-1, 1)]),
            loops: None,
            precision: 128,
        };
        let alpha = complex((0.01, 0.05), 128);
        for n in 1..=6 {
            let a = eval_scaled_jones(&ctx, &alpha, n, EvalPath::ExactPoly).unwrap();
            let b = eval_scaled_jones(&ctx, &alpha, n, EvalPath::Cyclotomic).unwrap();
            let c = eval_scaled_jones(&ctx, &alpha, n, EvalPath::NumericSum).unwrap();
            assert!(a.within(&b, 1e-25).unwrap() && a.within(&c, 1e-25).unwrap(), "n={n}");
        }
        // tail: small angle certifies, a large one does not
        assert!(eval_scaled_jones(&ctx, &alpha, 200, EvalPath::Cyclotomic).is_ok());
        let far = complex((0.0, 3.0), 128);
        assert!(matches!(
            eval_scaled_jones(&ctx, &far, 200, EvalPath::Cyclotomic),
            Err(Error::TailNotCertified { .. })
        ));
    }

    #[test]
    fn kernel_values_start_at_one_and_vanish_at_n() {
        let alpha = complex((0.1, 0.0), 128);
        let v = kernel_values(&alpha, 4, 10).unwrap();
        assert_eq!(v.len(), 5);
        assert!(v[0].within(&PrecisionComplex::one(128), 1e-30).unwrap());
        assert!(v[4].abs_f64() < 1e-30);
    }

    #[test]
    fn region_examples() {
        let r = region_estimate(RegionConstants { c: 0.0, c_double_prime: 0.0, c1: 1.0 });
        assert!((r.radius_at_zero_re - 1.0).abs() < 1e-15);
        assert!(r.contains((0.0, 0.99)) && !r.contains((0.0, 1.01)));
        let huge = region_estimate(RegionConstants { c: 1e6, c_double_prime: 0.0, c1: 1.0 });
        assert!(huge.empty);
        assert!(region_estimate(RegionConstants { c: 0.0, c_double_prime: 0.0, c1: -1.0 }).empty);
    }

    #[test]
    fn derivative_limits_for_unknot() {
        let tables: Vec<_> = (1..=5)
            .map(|n| crate::expansions::scaled_jones_taylor(&LaurentPolynomial::one(), n, 3).unwrap())
            .collect();
        let r = derivative_limit_check(&tables, &LaurentPolynomial::one(), 3).unwrap();
        assert!(r.passed);
        assert_eq!(r.limits[0].limit, "1/1");
    }

    #[test]
    fn degenerate_fits() {
        let ones = CyclotomicCoefficients::new("4_1", MirrorConvention::Standard, vec![LaurentPolynomial::one(); 8]);
        assert!(matches!(norm_growth_fit(&ones), Err(Error::DegenerateData(_))));
        assert!(matches!(degree_growth_fit(&ones), Err(Error::DegenerateData(_))));
    }

    #[test]
    fn csv_header() {
        let t = ResidualTable::default();
        assert_eq!(t.to_csv(), "knot,alpha_re,alpha_im,n,N,residual_re,residual_im,error_radius\n");
    }
}
