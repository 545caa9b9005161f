//! Discretized Hankel, Sturm-Liouville and Tracy-Widom operators, and the
//! residual checks for commutation and kernel factorization.

mod commutation;
mod tracy_widom;

pub use commutation::{bump_functions, capital_phi, commutator_residual, default_bumps};
pub use tracy_widom::{
    factorization_integral, factorization_residual, oscillatory_identity_residual, tw_kernel_eval, tw_operator,
    TracyWidomKernel,
};

use crate::catalogue::{CoefficientFamily, KernelCase};
use crate::error::{Error, Result};
use crate::quadrature::{Domain, DomainKind, Grid};
use nalgebra::DMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Hankel,
    SturmLiouville,
    TwKernel,
}

/// Symmetric matrix `D^(1/2) K D^(1/2)` (integral operators) or
/// `D^(-1/2) K D^(-1/2)` (differential operators) with `D = diag(weights)`.
/// It acts on weighted samples `sqrt(w_i) f(x_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedOperator {
    pub matrix: DMatrix<f64>,
    pub grid: Grid,
    pub kind: OperatorKind,
    pub symmetrization: &'static str,
}

impl DiscretizedOperator {
    pub(crate) fn new(mut matrix: DMatrix<f64>, grid: Grid, kind: OperatorKind) -> Self {
        let t = matrix.transpose();
        matrix += t;
        matrix *= 0.5;
        Self { matrix, grid, kind, symmetrization: "sqrt-weight" }
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Weighted samples `sqrt(w_i) f(x_i)`.
    pub fn weighted_samples(&self, f: &[f64]) -> Vec<f64> {
        f.iter().zip(&self.grid.weights).map(|(v, w)| v * w.sqrt()).collect()
    }
}

fn domain_kind(grid: &Grid) -> Result<DomainKind> {
    grid.domain
        .kind()
        .ok_or_else(|| Error::DomainMismatch { expected: "a Hankel domain".into(), found: format!("{:?}", grid.domain) })
}

fn require(grid: &Grid, expected: DomainKind) -> Result<()> {
    let found = domain_kind(grid)?;
    if found != expected {
        return Err(Error::DomainMismatch { expected: format!("{expected:?}"), found: format!("{found:?}") });
    }
    Ok(())
}

fn assemble(grid: &Grid, entry: impl Fn(f64, f64) -> f64, kind: OperatorKind) -> DiscretizedOperator {
    let n = grid.len();
    let sw: Vec<f64> = grid.weights.iter().map(|w| w.sqrt()).collect();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = sw[i] * sw[j] * entry(grid.nodes[i], grid.nodes[j]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    DiscretizedOperator::new(m, grid.clone(), kind)
}

/// Nystrom discretization `M_ij = sqrt(w_i w_j) phi(x_i + x_j)` of the Hankel
/// operator on the half-line.
pub fn hankel_nystrom(kc: &KernelCase, grid: &Grid) -> Result<DiscretizedOperator> {
    require(grid, kc.domain)?;
    require(grid, DomainKind::HalfLine)?;
    Ok(assemble(grid, |x, y| kc.kernel(x + y), OperatorKind::Hankel))
}

/// `M_ij = sqrt(w_i w_j) rho(x_i x_j)` with weights for `dx / x` on `(0, 1)`.
pub fn multiplicative_hankel(kc: &KernelCase, grid: &Grid) -> Result<DiscretizedOperator> {
    require(grid, DomainKind::UnitIntervalMultiplicative)?;
    require(grid, kc.domain)?;
    Ok(assemble(grid, |x, y| kc.kernel(x * y), OperatorKind::Hankel))
}

/// `M_ij = sqrt(w_i w_j) phi(x_i + x_j)` over one period.
pub fn periodic_hankel(kc: &KernelCase, grid: &Grid) -> Result<DiscretizedOperator> {
    require(grid, DomainKind::Periodic)?;
    require(grid, kc.domain)?;
    Ok(assemble(grid, |x, y| kc.kernel(x + y), OperatorKind::Hankel))
}

/// Whichever of the three Hankel discretizations matches the grid.
pub fn hankel_operator(kc: &KernelCase, grid: &Grid) -> Result<DiscretizedOperator> {
    match kc.domain {
        DomainKind::HalfLine => hankel_nystrom(kc, grid),
        DomainKind::UnitIntervalMultiplicative => multiplicative_hankel(kc, grid),
        DomainKind::Periodic => periodic_hankel(kc, grid),
    }
}

/// Divergence-form finite differences for `-(a f')' + b f`.
///
/// Fluxes use `a` at cell midpoints; the mass matrix is `diag(weights)`. There
/// is no flux condition at the first node (where `a` vanishes for the
/// catalogued families) and a homogeneous Dirichlet point at the truncation
/// end of a finite half-line grid.
pub fn sturm_liouville_matrix(fam: &CoefficientFamily, grid: &Grid) -> Result<DiscretizedOperator> {
    let right_end = match grid.domain {
        Domain::HalfLine { truncation, .. } => truncation,
        Domain::Interval { a, b } if a >= 0.0 => b,
        other => {
            return Err(Error::DomainMismatch { expected: "HalfLine".into(), found: format!("{other:?}") });
        }
    };
    let n = grid.len();
    let x = &grid.nodes;
    let check = |at: f64| {
        let value = fam.a.eval(at);
        if value < -1e-14 * (1.0 + at.abs()) {
            Err(Error::NegativeCoefficient { x: at, value })
        } else {
            Ok(value)
        }
    };
    for &xi in x.iter().skip(1) {
        check(xi)?;
    }
    let mut k = DMatrix::zeros(n, n);
    for i in 0..n.saturating_sub(1) {
        let h = x[i + 1] - x[i];
        let c = check(0.5 * (x[i] + x[i + 1]))? / h;
        k[(i, i)] += c;
        k[(i + 1, i + 1)] += c;
        k[(i, i + 1)] -= c;
        k[(i + 1, i)] -= c;
    }
    if n > 0 && right_end.is_finite() && right_end > x[n - 1] {
        let h = right_end - x[n - 1];
        k[(n - 1, n - 1)] += check(0.5 * (x[n - 1] + right_end))? / h;
    }
    let isw: Vec<f64> = grid.weights.iter().map(|w| 1.0 / w.sqrt()).collect();
    for i in 0..n {
        for j in 0..n {
            k[(i, j)] *= isw[i] * isw[j];
        }
        k[(i, i)] += fam.b.eval(x[i]);
    }
    Ok(DiscretizedOperator::new(k, grid.clone(), OperatorKind::SturmLiouville))
}
