use super::SpectralReport;
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

/// Singular values at or below this are treated as rounding noise.
pub const NUMERICAL_FLOOR: f64 = 1e-13;
/// Leading indices left out of the fit as pre-asymptotic.
const SKIP_LEADING: usize = 3;
const MIN_ABOVE_FLOOR: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayReport {
    /// `p -> (j^p s_j)_j` for `p = 1..=5`, `j = 1, 2, ...` above the floor.
    pub weighted_tails: BTreeMap<u32, Vec<f64>>,
    /// Fit `s_N ~ c1 exp(-kappa2 N^exponent)`.
    pub c1: f64,
    pub kappa2: f64,
    pub exponent: f64,
    /// RMS of the fit residual in `log s_N`.
    pub model_residual: f64,
    /// One-based indices `N` that entered the fit.
    pub fit_indices: Vec<usize>,
}

impl DecayReport {
    pub fn fit_value(&self, n: usize) -> f64 {
        self.c1 * (-self.kappa2 * (n as f64).powf(self.exponent)).exp()
    }
}

/// Stretched-exponential fit with the cube-root exponent.
pub fn decay_fit(sr: &SpectralReport) -> Result<DecayReport> {
    decay_fit_with_exponent(sr, 1.0 / 3.0)
}

/// Least squares for `log s_N = log c1 - kappa2 N^theta` over the indices past
/// the first three whose singular values clear [`NUMERICAL_FLOOR`].
pub fn decay_fit_with_exponent(sr: &SpectralReport, theta: f64) -> Result<DecayReport> {
    if !(theta > 0.0) {
        return Err(Error::InvalidArgument(format!("decay exponent must be positive, got {theta}")));
    }
    let above: Vec<f64> = sr.singular_values.iter().copied().take_while(|&s| s > NUMERICAL_FLOOR).collect();
    if above.len() < MIN_ABOVE_FLOOR {
        return Err(Error::InsufficientData { needed: MIN_ABOVE_FLOOR, found: above.len() });
    }
    let weighted_tails = (1..=5u32)
        .map(|p| (p, above.iter().enumerate().map(|(j, s)| ((j + 1) as f64).powi(p as i32) * s).collect()))
        .collect();
    let fit_indices: Vec<usize> = (SKIP_LEADING + 1..=above.len()).collect();
    let xs: Vec<f64> = fit_indices.iter().map(|&n| (n as f64).powf(theta)).collect();
    let ys: Vec<f64> = fit_indices.iter().map(|&n| above[n - 1].ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs.iter().zip(&ys).map(|(x, y)| (intercept + slope * x - y).powi(2)).sum();
    Ok(DecayReport {
        weighted_tails,
        c1: intercept.exp(),
        kappa2: -slope,
        exponent: theta,
        model_residual: (rss / m).sqrt(),
        fit_indices,
    })
}
