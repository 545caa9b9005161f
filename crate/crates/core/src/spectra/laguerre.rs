use super::{eigen_decompose, SpectralReport};
use crate::catalogue::{Integrability, KernelCase};
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, DomainKind};
use crate::specfun::laguerre_all;
use nalgebra::DMatrix;
use serde::Serialize;
use std::f64::consts::SQRT_2;

/// Largest supported section order.
pub const MAX_SECTION: usize = 128;

/// The compression of a half-line Hankel operator to the orthonormal Laguerre
/// functions `h_n(s) = sqrt(2) e^(-s) L_n(2s)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaguerreSection {
    pub order: usize,
    /// `a[j][k] = <G h_j, h_k>` by two-dimensional quadrature.
    #[serde(skip)]
    pub entries: DMatrix<f64>,
    /// `int phi h_j` for `j < 2N`.
    pub coefficients: Vec<f64>,
    /// `c_m = (coefficients[m] - coefficients[m + 1]) / sqrt 2`, the value the
    /// entries take on the anti-diagonal `j + k = m`.
    pub hankel_sequence: Vec<f64>,
    /// Largest spread of the entries along any anti-diagonal.
    pub hankel_defect: f64,
    pub max_entry: f64,
}

impl LaguerreSection {
    pub fn singular_values(&self) -> Result<SpectralReport> {
        let (values, _) = eigen_decompose(&self.entries, false)?;
        let mut r = SpectralReport::from_singular_values(values);
        r.grid_id = format!("laguerre-section/N={}", self.order);
        Ok(r)
    }
}

/// Builds the `N x N` Laguerre section of a decaying half-line kernel.
pub fn laguerre_section(kc: &KernelCase, order: usize) -> Result<LaguerreSection> {
    if kc.integrability == Integrability::BoundedOnly {
        return Err(Error::NonIntegrable(format!("{} is not Hilbert-Schmidt", kc.case_id)));
    }
    if kc.domain != DomainKind::HalfLine {
        return Err(Error::DomainMismatch { expected: "HalfLine".into(), found: format!("{:?}", kc.domain) });
    }
    if kc.decay.is_none() {
        return Err(Error::UnsupportedCase(format!("{} has no decay metadata", kc.case_id)));
    }
    if order == 0 || order > MAX_SECTION {
        return Err(Error::InvalidArgument(format!("section order must be in 1..={MAX_SECTION}, got {order}")));
    }
    let grid = gauss_legendre((6 * order).max(384), 0.0, kc.truncation())?;
    let nq = grid.len();
    let nb = 2 * order;
    // basis[i, j] = h_j(x_i)
    let mut basis = DMatrix::zeros(nq, nb);
    for (i, &x) in grid.nodes.iter().enumerate() {
        let scale = SQRT_2 * (-x).exp();
        for (j, l) in laguerre_all(nb, 0.0, 2.0 * x).into_iter().enumerate() {
            basis[(i, j)] = scale * l;
        }
    }
    let coefficients: Vec<f64> = (0..nb)
        .map(|j| grid.nodes.iter().zip(&grid.weights).enumerate().map(|(i, (&x, &w))| w * kc.kernel(x) * basis[(i, j)]).sum())
        .collect();
    let hankel_sequence: Vec<f64> = (0..nb - 1).map(|m| (coefficients[m] - coefficients[m + 1]) / SQRT_2).collect();

    let mut weighted = DMatrix::zeros(nq, nq);
    for i in 0..nq {
        for k in 0..=i {
            let v = grid.weights[i] * grid.weights[k] * kc.kernel(grid.nodes[i] + grid.nodes[k]);
            weighted[(i, k)] = v;
            weighted[(k, i)] = v;
        }
    }
    let b = basis.columns(0, order);
    let mut entries = b.transpose() * &weighted * b;
    let t = entries.transpose();
    entries += t;
    entries *= 0.5;

    let max_entry = entries.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut hankel_defect: f64 = 0.0;
    for m in 0..2 * order - 1 {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for j in m.saturating_sub(order - 1)..=m.min(order - 1) {
            let v = entries[(j, m - j)];
            lo = lo.min(v);
            hi = hi.max(v);
        }
        hankel_defect = hankel_defect.max(hi - lo);
    }
    Ok(LaguerreSection { order, entries, coefficients, hankel_sequence, hankel_defect, max_entry })
}

/// `sum_{j > N} j |g_j|` for the one-based Hankel sequence `g_j = c[j - 1]`,
/// continued past the last entry by the geometric ratio of the final two.
pub fn sequence_tail_bound(c: &[f64], n: usize) -> f64 {
    let len = c.len();
    let mut sum = 0.0;
    for j in (n + 1)..=len {
        sum += j as f64 * c[j - 1].abs();
    }
    if len < 2 {
        return sum;
    }
    let scale = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let last = c[len - 1].abs();
    if last <= 1e-15 * scale {
        return sum;
    }
    let rho = last / c[len - 2].abs();
    if !(rho < 1.0) {
        return f64::INFINITY;
    }
    let base = n.max(len) as f64;
    let lead = last * rho.powf(base - len as f64);
    sum + lead * (base * rho / (1.0 - rho) + rho / ((1.0 - rho) * (1.0 - rho)))
}

/// Finite-section bound on `s_{N+1}` from the Hankel sequence of the section.
pub fn finite_section_bound(ls: &LaguerreSection, n: usize) -> f64 {
    sequence_tail_bound(&ls.hankel_sequence, n)
}
