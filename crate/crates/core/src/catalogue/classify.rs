//! Singular points of the kernel equation and the resulting equation class.

use super::family::{CoefficientFamily, FamilyFunction};
use crate::error::Result;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Location {
    Finite(f64),
    Infinity,
    Complex { re: f64, im: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PointKind {
    Regular,
    Irregular,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularPoint {
    pub location: Location,
    pub kind: PointKind,
    /// Characteristic exponents when they are real.
    pub exponents: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EquationClass {
    Trivial,
    Elementary,
    ConfluentHypergeometric,
    Hypergeometric,
}

impl EquationClass {
    pub fn name(self) -> &'static str {
        match self {
            EquationClass::Trivial => "trivial",
            EquationClass::Elementary => "elementary",
            EquationClass::ConfluentHypergeometric => "confluent-hypergeometric",
            EquationClass::Hypergeometric => "hypergeometric",
        }
    }
}

/// `P{0, inf, zeta; alpha1, beta1, -1; alpha2, beta2, 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiemannScheme {
    pub zeta: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta1: f64,
    pub beta2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularityReport {
    pub points: Vec<SingularPoint>,
    pub equation_class: EquationClass,
    pub riemann_scheme: Option<RiemannScheme>,
    /// Sub-case label such as `Q(vii)` or `H(vi)`.
    pub case_label: String,
}

impl SingularityReport {
    pub fn regular_count(&self) -> usize {
        self.points.iter().filter(|p| p.kind == PointKind::Regular).count()
    }

    pub fn irregular_count(&self) -> usize {
        self.points.iter().filter(|p| p.kind == PointKind::Irregular).count()
    }
}

/// Real roots of `r^2 - s r + p = 0`, larger first.
fn real_roots(s: f64, p: f64) -> Option<[f64; 2]> {
    let disc = s * s - 4.0 * p;
    if disc < 0.0 {
        return None;
    }
    let d = disc.sqrt();
    Some([0.5 * (s + d), 0.5 * (s - d)])
}

fn regular(location: Location, exponents: Option<[f64; 2]>) -> SingularPoint {
    SingularPoint { location, kind: PointKind::Regular, exponents }
}

fn irregular(location: Location) -> SingularPoint {
    SingularPoint { location, kind: PointKind::Irregular, exponents: None }
}

fn report(points: Vec<SingularPoint>, class: EquationClass, label: &str) -> SingularityReport {
    SingularityReport { points, equation_class: class, riemann_scheme: None, case_label: label.to_string() }
}

/// Classifies the singular points of the equation satisfied by the kernel.
///
/// Quadratic families are analysed in `u`, hyperbolic ones in `x = exp(-2u)`
/// and circular ones in `tau = tan(t u / 2)`.
pub fn classify(fam: &CoefficientFamily) -> Result<SingularityReport> {
    fam.check_admissible()?;
    let b_const = fam.b.is_constant();
    Ok(match (fam.a, fam.b) {
        (FamilyFunction::Quadratic { c2: q2, c1: q1, .. }, b) => {
            let (b2, b1) = match b {
                FamilyFunction::Quadratic { c2, c1, .. } => (c2, c1),
                _ => (0.0, 0.0),
            };
            classify_quadratic(q2, q1, b2, b1)
        }
        (FamilyFunction::Hyperbolic { k1: h1, k2: h2, .. }, b) => {
            let (h4, h5) = match b {
                FamilyFunction::Hyperbolic { k1, k2, .. } if !b_const => (k1, k2),
                _ => (0.0, 0.0),
            };
            classify_hyperbolic(h1, h2, h4, h5)
        }
        (FamilyFunction::Circular { k1: c1, k2: c2, .. }, _) => classify_circular(c1, c2, b_const),
    })
}

fn classify_quadratic(q2: f64, q1: f64, b2: f64, b1: f64) -> SingularityReport {
    use EquationClass::*;
    if q2 == 0.0 {
        return if b2 == 0.0 && b1 == 0.0 {
            report(vec![], Trivial, "Q(ii)")
        } else if b2 == 0.0 {
            report(vec![irregular(Location::Infinity)], Elementary, "Q(iv)")
        } else {
            report(vec![irregular(Location::Infinity)], ConfluentHypergeometric, "Q(v)")
        };
    }
    let pole = regular(Location::Finite(-q1 / q2), Some([0.0, -1.0]));
    if b2 == 0.0 && b1 == 0.0 {
        report(vec![pole, regular(Location::Infinity, Some([1.0, 0.0]))], Elementary, "Q(iii)")
    } else if b2 == 0.0 {
        report(vec![pole, irregular(Location::Infinity)], ConfluentHypergeometric, "Q(vi)")
    } else {
        report(vec![pole, irregular(Location::Infinity)], ConfluentHypergeometric, "Q(vii)")
    }
}

/// Works with `P = h1 + h2`, `M = h2 - h1`, `R = h4 + h5`, `S = h5 - h4`, in which the
/// equation reads `rho'' + 2M/(P + Mx) rho' - (R + Sx)/(4x^2 (P + Mx)) rho = 0`.
fn classify_hyperbolic(h1: f64, h2: f64, h4: f64, h5: f64) -> SingularityReport {
    use EquationClass::*;
    let (p, m, r, s) = (h1 + h2, h2 - h1, h4 + h5, h5 - h4);
    let zero = Location::Finite(0.0);
    if m == 0.0 {
        // Euler-type at 0: r(r - 1) = R/(4P)
        let at_zero = regular(zero, real_roots(1.0, -r / (4.0 * p)));
        return if s == 0.0 {
            let at_inf = regular(Location::Infinity, real_roots(-1.0, -r / (4.0 * p)));
            report(vec![at_zero, at_inf], Elementary, "H(i)")
        } else {
            report(vec![at_zero, irregular(Location::Infinity)], ConfluentHypergeometric, "H(ii)")
        };
    }
    let at_inf = regular(Location::Infinity, real_roots(1.0, -s / (4.0 * m)));
    if p == 0.0 {
        return if r == 0.0 {
            let at_zero = regular(zero, real_roots(-1.0, -s / (4.0 * m)));
            report(vec![at_zero, at_inf], Elementary, "H(iii)")
        } else {
            report(vec![irregular(zero), at_inf], ConfluentHypergeometric, "H(iv)")
        };
    }
    let zeta = -p / m;
    let at_zeta = regular(Location::Finite(zeta), Some([0.0, -1.0]));
    if r == 0.0 && s == 0.0 {
        return report(vec![at_zeta, at_inf], Elementary, "H(vii)");
    }
    let alphas = real_roots(1.0, -r / (4.0 * p));
    let betas = real_roots(1.0, -s / (4.0 * m));
    let label = if r == 0.0 || s == 0.0 { "H(v)" } else { "H(vi)" };
    let mut out = report(vec![regular(zero, alphas), at_inf, at_zeta], Hypergeometric, label);
    out.points[1].exponents = betas;
    if let (Some([alpha1, alpha2]), Some([beta1, beta2])) = (alphas, betas) {
        out.riemann_scheme = Some(RiemannScheme { zeta, alpha1, alpha2, beta1, beta2 });
    }
    out
}

fn classify_circular(c1: f64, c2: f64, b_const: bool) -> SingularityReport {
    let pole = if c1 == 0.0 { Location::Infinity } else { Location::Finite(c2 / c1) };
    let mut points = vec![regular(pole, Some([0.0, -1.0]))];
    if b_const {
        return report(points, EquationClass::Elementary, "C(elementary)");
    }
    points.push(regular(Location::Complex { re: 0.0, im: 1.0 }, None));
    points.push(regular(Location::Complex { re: 0.0, im: -1.0 }, None));
    report(points, EquationClass::Hypergeometric, "C(generic)")
}
