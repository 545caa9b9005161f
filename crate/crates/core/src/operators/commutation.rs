use super::DiscretizedOperator;
use crate::catalogue::{KernelCase, POLE_TOLERANCE};
use crate::error::{Error, Result};
use crate::quadrature::Grid;

/// `(a(y) - a(x)) phi''(x+y) + (a'(y) - a'(x)) phi'(x+y) - (b(y) - b(x)) phi(x+y)`,
/// in the additive variable; it vanishes exactly when the Hankel operator
/// commutes with `-(a f')' + b f`.
pub fn capital_phi(kc: &KernelCase, x: f64, y: f64) -> Result<f64> {
    let fam = kc
        .family
        .as_ref()
        .ok_or_else(|| Error::UnsupportedCase(format!("{} has no coefficient pair", kc.case_id)))?;
    let u = x + y;
    if fam.pole_distance(u) < POLE_TOLERANCE {
        return Err(Error::PoleProximity { at: u, tol: POLE_TOLERANCE });
    }
    let [f, f1, f2] = kc.additive(u);
    let (a, b) = (&fam.a, &fam.b);
    Ok((a.eval(y) - a.eval(x)) * f2 + (a.derivative(y) - a.derivative(x)) * f1 - (b.eval(y) - b.eval(x)) * f)
}

/// `(center, radius)` pairs for three bumps placed in the interior of `[0, T]`.
pub fn default_bumps(truncation: f64) -> Vec<(f64, f64)> {
    [(0.125, 0.05), (0.2, 0.075), (0.075, 0.0375)]
        .iter()
        .map(|(c, r)| (c * truncation, r * truncation))
        .collect()
}

/// Samples of `exp(-1 / (1 - ((x - c) / r)^2))` on the grid nodes.
pub fn bump_functions(grid: &Grid, bumps: &[(f64, f64)]) -> Vec<Vec<f64>> {
    bumps
        .iter()
        .map(|&(c, r)| {
            grid.nodes
                .iter()
                .map(|&x| {
                    let z = (x - c) / r;
                    if z.abs() < 1.0 {
                        (-1.0 / (1.0 - z * z)).exp()
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect()
}

/// `max_f ||(G L - L G) f|| / ||f||` over the test functions, given as plain
/// samples on the shared grid and measured in the grid norm.
pub fn commutator_residual(g: &DiscretizedOperator, l: &DiscretizedOperator, test_fns: &[Vec<f64>]) -> Result<f64> {
    if g.grid != l.grid {
        return Err(Error::DomainMismatch { expected: "operators on one grid".into(), found: "two grids".into() });
    }
    let mut worst: f64 = 0.0;
    for f in test_fns {
        if f.len() != g.len() {
            return Err(Error::InvalidArgument(format!("test function has {} samples, grid has {}", f.len(), g.len())));
        }
        let v = nalgebra::DVector::from_vec(g.weighted_samples(f));
        let norm = v.norm();
        if norm == 0.0 {
            continue;
        }
        let d = &g.matrix * (&l.matrix * &v) - &l.matrix * (&g.matrix * &v);
        worst = worst.max(d.norm() / norm);
    }
    Ok(worst)
}
