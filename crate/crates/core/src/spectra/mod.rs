//! Singular values, finite sections in the Laguerre basis, decay fits,
//! counting functions and Fredholm determinants.

mod decay;
mod eigen;
mod fredholm;
mod laguerre;

pub use decay::{decay_fit, decay_fit_with_exponent, DecayReport, NUMERICAL_FLOOR};
pub use eigen::{eigen_decompose, JACOBI_MAX_ORDER};
pub use fredholm::{airy_edge_hankel, airy_edge_tracy_widom, counting_function, fredholm_det, fredholm_log_det};
pub use laguerre::{finite_section_bound, laguerre_section, sequence_tail_bound, LaguerreSection, MAX_SECTION};

use crate::error::{Error, Result};
use crate::operators::DiscretizedOperator;
use crate::quadrature::Grid;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    /// Descending, non-negative.
    pub singular_values: Vec<f64>,
    /// `(eigenvalue, weighted eigenvector)` sorted by descending `|eigenvalue|`.
    pub eigenpairs: Option<Vec<(f64, Vec<f64>)>>,
    pub grid_id: String,
}

impl SpectralReport {
    /// Report from raw singular values (sorted here).
    pub fn from_singular_values(mut values: Vec<f64>) -> Self {
        values.iter_mut().for_each(|v| *v = v.abs());
        values.sort_by(|a, b| b.total_cmp(a));
        Self { singular_values: values, eigenpairs: None, grid_id: "synthetic".into() }
    }

    /// Eigenvalues in the order of the singular values, when kept.
    pub fn eigenvalues(&self) -> Option<Vec<f64>> {
        self.eigenpairs.as_ref().map(|p| p.iter().map(|(v, _)| *v).collect())
    }

    /// Number of singular values above `rel * s_1`.
    pub fn numerical_rank(&self, rel: f64) -> usize {
        let top = self.singular_values.first().copied().unwrap_or(0.0);
        self.singular_values.iter().filter(|&&s| s > rel * top).count()
    }
}

pub(crate) fn grid_id(grid: &Grid) -> String {
    format!("{:?}/n={}", grid.domain, grid.len())
}

fn report(values: Vec<f64>, vectors: Option<nalgebra::DMatrix<f64>>, grid: &Grid) -> SpectralReport {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].abs().total_cmp(&values[a].abs()));
    let singular_values = order.iter().map(|&k| values[k].abs()).collect();
    let eigenpairs =
        vectors.map(|v| order.iter().map(|&k| (values[k], v.column(k).iter().copied().collect())).collect());
    SpectralReport { singular_values, eigenpairs, grid_id: grid_id(grid) }
}

/// Singular values `|lambda_k|` of a symmetric discretization.
pub fn symmetric_eigen(op: &DiscretizedOperator) -> Result<SpectralReport> {
    let (values, _) = eigen_decompose(&op.matrix, false)?;
    Ok(report(values, None, &op.grid))
}

/// As [`symmetric_eigen`], keeping eigenvectors.
pub fn symmetric_eigen_with_vectors(op: &DiscretizedOperator) -> Result<SpectralReport> {
    let (values, vectors) = eigen_decompose(&op.matrix, true)?;
    Ok(report(values, vectors, &op.grid))
}

/// For each of the `k` lowest eigenvectors `v` of `l`, `||Gv - (v^T G v) v|| / ||Gv||`:
/// zero when `v` is also an eigenvector of `g`.
pub fn common_basis_residual(g: &DiscretizedOperator, l: &DiscretizedOperator, k: usize) -> Result<Vec<f64>> {
    if g.grid != l.grid {
        return Err(Error::DomainMismatch { expected: "operators on one grid".into(), found: "two grids".into() });
    }
    if k > l.len() {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds the dimension {}", l.len())));
    }
    let (values, vectors) = eigen_decompose(&l.matrix, true)?;
    let vectors = vectors.expect("vectors requested");
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    Ok(order[..k]
        .iter()
        .map(|&j| {
            let v = vectors.column(j);
            let gv = &g.matrix * v;
            let rq = v.dot(&gv);
            let norm = gv.norm();
            if norm == 0.0 {
                0.0
            } else {
                (gv - v * rq).norm() / norm
            }
        })
        .collect())
}
