//! Least-squares constant fitting for the growth and decay checks.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A fitted model `y ≈ Σ c_i f_i(k)` with residual statistics. `slack` is
/// the smallest constant that makes the model an upper bound on the data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundFit {
    pub model: String,
    pub parameters: Vec<String>,
    pub constants: Vec<f64>,
    pub max_abs_residual: f64,
    pub rms_residual: f64,
    pub slack: f64,
    pub points: usize,
}

impl BoundFit {
    pub fn constant(&self, name: &str) -> Option<f64> {
        self.parameters
            .iter()
            .position(|p| p == name)
            .map(|i| self.constants[i])
    }

    /// Model value (without slack) for one row of regressors.
    pub fn predict(&self, row: &[f64]) -> f64 {
        row.iter().zip(&self.constants).map(|(a, c)| a * c).sum()
    }
}

/// Ordinary least squares via SVD.
pub fn least_squares(rows: &[Vec<f64>], y: &[f64]) -> Result<Vec<f64>> {
    let n = rows.len();
    let p = rows.first().map_or(0, Vec::len);
    if n < p || p == 0 {
        return Err(Error::DegenerateData(format!("{n} points for {p} parameters")));
    }
    let a = DMatrix::from_fn(n, p, |i, j| rows[i][j]);
    let b = DVector::from_column_slice(y);
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    if svd.singular_values.min() <= smax * 1e-12 {
        return Err(Error::DegenerateData("rank-deficient design".into()));
    }
    let x = svd
        .solve(&b, smax * 1e-14)
        .map_err(|e| Error::DegenerateData(e.to_string()))?;
    Ok(x.iter().copied().collect())
}

pub fn fit_bound(model: &str, parameters: &[&str], rows: &[Vec<f64>], y: &[f64]) -> Result<BoundFit> {
    let constants = least_squares(rows, y)?;
    let residuals: Vec<f64> = rows
        .iter()
        .zip(y)
        .map(|(r, &v)| v - r.iter().zip(&constants).map(|(a, c)| a * c).sum::<f64>())
        .collect();
    let max_abs_residual = residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let rms_residual = (residuals.iter().map(|r| r * r).sum::<f64>() / residuals.len() as f64).sqrt();
    let slack = residuals.iter().fold(0.0f64, |m, &r| m.max(r));
    Ok(BoundFit {
        model: model.to_string(),
        parameters: parameters.iter().map(|s| s.to_string()).collect(),
        constants,
        max_abs_residual,
        rms_residual,
        slack,
        points: y.len(),
    })
}

/// Slope of `log y` against `log x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::DegenerateData("log-log fit needs two points".into()));
    }
    if xs.iter().chain(ys).any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::DegenerateData("log-log fit needs positive finite data".into()));
    }
    let rows: Vec<Vec<f64>> = xs.iter().map(|x| vec![x.ln(), 1.0]).collect();
    let y: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    Ok(least_squares(&rows, &y)?[0])
}
