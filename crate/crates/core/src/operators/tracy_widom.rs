use super::{DiscretizedOperator, OperatorKind};
use crate::catalogue::{CaseId, Integrability, KernelCase};
use crate::error::{Error, Result};
use crate::quadrature::{composite_legendre, graded_half_line, DomainKind, Grid};
use crate::specfun::{airy_ai_both, bessel_j, bessel_j_prime};
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

type ValueAndSlope = Arc<dyn Fn(f64) -> [f64; 2] + Send + Sync>;

/// Below this separation the kernel switches to its diagonal limit.
const DIAGONAL_GAP: f64 = 1e-6;
const PANEL_ORDER: usize = 24;

/// Integrable kernel `W(x, y) = (f(x) g(y) - f(y) g(x)) / (x - y)`.
#[derive(Clone)]
pub struct TracyWidomKernel {
    pub name: String,
    f: ValueAndSlope,
    g: ValueAndSlope,
}

impl fmt::Debug for TracyWidomKernel {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.debug_struct("TracyWidomKernel").field("name", &self.name).finish_non_exhaustive()
    }
}

/// `int_0^inf e^(-2t) / (z + t)^p dt` for `p = 1, 2`.
fn exp_resolvent(z: f64) -> [f64; 2] {
    let scale = z.clamp(1e-3, 1.0);
    let e1 = graded_half_line(|t| (-2.0 * t).exp() / (z + t), scale, 40.0, PANEL_ORDER);
    let e2 = graded_half_line(|t| (-2.0 * t).exp() / ((z + t) * (z + t)), scale, 40.0, PANEL_ORDER);
    [e1, e2]
}

impl TracyWidomKernel {
    /// `f` and `g` return `[value, derivative]`.
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(f64) -> [f64; 2] + Send + Sync + 'static,
        g: impl Fn(f64) -> [f64; 2] + Send + Sync + 'static,
    ) -> Self {
        Self { name: name.into(), f: Arc::new(f), g: Arc::new(g) }
    }

    pub fn f(&self, x: f64) -> [f64; 2] {
        (self.f)(x)
    }

    pub fn g(&self, x: f64) -> [f64; 2] {
        (self.g)(x)
    }

    /// `f = Ai(x + s)`, `g = Ai'(x + s)`.
    pub fn airy(shift: f64) -> Self {
        Self::new(
            format!("airy(shift = {shift})"),
            move |x| {
                let (a, ap) = airy_ai_both(x + shift);
                [a.value, ap.value]
            },
            move |x| {
                let (a, ap) = airy_ai_both(x + shift);
                [ap.value, (x + shift) * a.value]
            },
        )
    }

    /// `f = e^(-z)`, `g = e^(-z) int_0^inf e^(-2t) / (z + t) dt` with `z = x + s`;
    /// factorizes `exp(-(u + s)) / (u + s)`.
    pub fn exponential(shift: f64) -> Self {
        Self::new(
            format!("exponential(shift = {shift})"),
            move |x| {
                let e = (-(x + shift)).exp();
                [e, -e]
            },
            move |x| {
                let z = x + shift;
                let e = (-z).exp();
                let [r1, r2] = exp_resolvent(z);
                [e * r1, -e * (r1 + r2)]
            },
        )
    }

    /// `f = J_nu(2 sqrt x)`, `g = sqrt(x) J_nu'(2 sqrt x)`; on `(0, 1)` this
    /// equals `int_0^1 J_nu(2 sqrt(t x)) J_nu(2 sqrt(t y)) dt`.
    pub fn bessel(nu: f64) -> Self {
        let j = move |z: f64| bessel_j(nu, z).map(|r| r.value).unwrap_or(f64::NAN);
        let jp = move |z: f64| bessel_j_prime(nu, z).map(|r| r.value).unwrap_or(f64::NAN);
        Self::new(
            format!("bessel(nu = {nu})"),
            move |x| {
                let s = x.sqrt();
                [j(2.0 * s), jp(2.0 * s) / s]
            },
            move |x| {
                let s = x.sqrt();
                [s * jp(2.0 * s), -(1.0 - nu * nu / (4.0 * x)) * j(2.0 * s)]
            },
        )
    }

    /// The integrable kernel paired with a catalogued case, where one is known.
    pub fn for_case(kc: &KernelCase) -> Option<Self> {
        let p = |name: &str| kc.params.get(name).copied().unwrap_or(0.0);
        match kc.case_id {
            CaseId::Q5Airy => Some(Self::airy(p("shift") + kc.offset)),
            CaseId::Q7Plus => Some(Self::exponential(p("shift") + kc.offset)),
            CaseId::H2Minus => Some(Self::bessel(p("nu"))),
            _ => None,
        }
    }
}

/// `W(x, y)`, using the limit `f'(x) g(x) - f(x) g'(x)` near the diagonal.
pub fn tw_kernel_eval(k: &TracyWidomKernel, x: f64, y: f64) -> f64 {
    if (x - y).abs() < DIAGONAL_GAP {
        let m = 0.5 * (x + y);
        let [f, f1] = k.f(m);
        let [g, g1] = k.g(m);
        return f1 * g - f * g1;
    }
    let [fx, _] = k.f(x);
    let [gx, _] = k.g(x);
    let [fy, _] = k.f(y);
    let [gy, _] = k.g(y);
    (fx * gy - fy * gx) / (x - y)
}

/// Symmetric discretization of `W` on a grid, plain `dx` weights.
pub fn tw_operator(k: &TracyWidomKernel, grid: &Grid) -> DiscretizedOperator {
    super::assemble(grid, |x, y| tw_kernel_eval(k, x, y), OperatorKind::TwKernel)
}

/// Kernel of the squared Hankel operator: `int_0^inf phi(x+t) phi(y+t) dt` on the
/// half-line, `(xy)^(-1/2) int_0^1 rho(xt) rho(yt) dt/t` on `(0, 1)`, and the
/// one-period integral for periodic kernels.
pub fn factorization_integral(kc: &KernelCase, x: f64, y: f64) -> Result<f64> {
    if kc.integrability == Integrability::BoundedOnly {
        return Err(Error::NonIntegrable(format!("{} is not Hilbert-Schmidt", kc.case_id)));
    }
    Ok(match kc.domain {
        DomainKind::HalfLine => {
            let scale = (0.5 * x.min(y)).clamp(1.0 / 64.0, 1.0);
            graded_half_line(|t| kc.kernel(x + t) * kc.kernel(y + t), scale, kc.truncation(), PANEL_ORDER)
        }
        DomainKind::UnitIntervalMultiplicative => {
            let inner = graded_half_line(|t| kc.kernel(x * t) * kc.kernel(y * t) / t, 1.0 / 64.0, 1.0, PANEL_ORDER);
            inner / (x * y).sqrt()
        }
        DomainKind::Periodic => {
            let period = kc.period.unwrap_or(2.0 * std::f64::consts::PI);
            composite_legendre(|t| kc.kernel(x + t) * kc.kernel(y + t), 0.0, period, 16, PANEL_ORDER)
        }
    })
}

/// `max |W(x, y) - factorization_integral(x, y)|` over the probe points.
pub fn factorization_residual(kc: &KernelCase, w: &TracyWidomKernel, probe: &[(f64, f64)]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &(x, y) in probe {
        let lhs = tw_kernel_eval(w, x, y);
        let rhs = factorization_integral(kc, x, y)?;
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

/// Checks the oscillatory identity for `f = e^(ix)`, `g = e^(ix) int_0^inf e^(2it)/(x+t) dt`:
/// `W(x, y) = int_0^inf e^(i(x+y+2t)) / ((x+t)(y+t)) dt`. The oscillatory
/// integrals are taken along the rotated contour `t = i s`. Returns the largest
/// real-part and imaginary-part discrepancies over the probe.
pub fn oscillatory_identity_residual(probe: &[(f64, f64)]) -> (f64, f64) {
    let i = Complex64::i();
    let rotated = |h: &dyn Fn(Complex64) -> Complex64, scale: f64| -> Complex64 {
        // int_0^inf e^(2it) h(t) dt = i int_0^inf e^(-2s) h(is) ds
        let re = graded_half_line(|s| (-2.0 * s).exp() * h(i * s).re, scale, 40.0, PANEL_ORDER);
        let im = graded_half_line(|s| (-2.0 * s).exp() * h(i * s).im, scale, 40.0, PANEL_ORDER);
        i * Complex64::new(re, im)
    };
    let g = |x: f64| {
        let e = (i * x).exp();
        let r1 = rotated(&|t| 1.0 / (x + t), x.clamp(1e-3, 1.0));
        let r2 = rotated(&|t| 1.0 / ((x + t) * (x + t)), x.clamp(1e-3, 1.0));
        (e * r1, i * e * r1 - e * r2)
    };
    let (mut worst_re, mut worst_im): (f64, f64) = (0.0, 0.0);
    for &(x, y) in probe {
        let lhs = if (x - y).abs() < DIAGONAL_GAP {
            let m = 0.5 * (x + y);
            let (gm, gm1) = g(m);
            let f = (i * m).exp();
            i * f * gm - f * gm1
        } else {
            let ((gx, _), (gy, _)) = (g(x), g(y));
            ((i * x).exp() * gy - (i * y).exp() * gx) / (x - y)
        };
        let scale = x.min(y).clamp(1e-3, 1.0);
        let rhs = (i * (x + y)).exp() * rotated(&|t| 1.0 / ((x + t) * (y + t)), scale);
        worst_re = worst_re.max((lhs.re - rhs.re).abs());
        worst_im = worst_im.max((lhs.im - rhs.im).abs());
    }
    (worst_re, worst_im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::{build_case, default_case, Params};
    use crate::quadrature::gauss_legendre;
    use crate::specfun::airy_ai_prime;

    fn params(pairs: &[(&str, f64)]) -> Params {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn airy_diagonal_at_origin() {
        let w = TracyWidomKernel::airy(0.0);
        let d = airy_ai_prime(0.0).value;
        assert!((tw_kernel_eval(&w, 0.0, 0.0) - d * d).abs() < 1e-15);
    }

    #[test]
    fn kernel_is_symmetric_and_continuous() {
        let w = TracyWidomKernel::airy(0.0);
        for x in [0.0, 0.7, 2.5, 5.0] {
            assert!((tw_kernel_eval(&w, x, x + 0.3) - tw_kernel_eval(&w, x + 0.3, x)).abs() < 1e-15);
            assert!((tw_kernel_eval(&w, x, x + 1e-7) - tw_kernel_eval(&w, x, x)).abs() < 1e-5);
        }
    }

    #[test]
    fn equal_functions_give_zero() {
        let w = TracyWidomKernel::new("same", |x: f64| [x.sin(), x.cos()], |x: f64| [x.sin(), x.cos()]);
        assert_eq!(tw_kernel_eval(&w, 0.3, 0.9), 0.0);
        assert_eq!(tw_kernel_eval(&w, 0.3, 0.3), 0.0);
    }

    #[test]
    fn airy_factorization_at_origin() {
        let kc = default_case(CaseId::Q5Airy).unwrap();
        let d = airy_ai_prime(0.0).value;
        assert!((factorization_integral(&kc, 0.0, 0.0).unwrap() - d * d).abs() < 1e-8);
    }

    #[test]
    fn exponential_square_kernel() {
        let kc = default_case(CaseId::Q4).unwrap();
        assert!((factorization_integral(&kc, 0.0, 0.0).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn exp_resolvent_matches_exponential_integral() {
        // e^(2z) E1(2z) at z = 1/2 is e E1(1)
        let e1_of_1 = 0.219_383_934_395_520_3;
        assert!((exp_resolvent(0.5)[0] - std::f64::consts::E * e1_of_1).abs() < 1e-13);
    }

    #[test]
    fn catalogued_factorizations() {
        let probe: Vec<(f64, f64)> =
            (0..10).flat_map(|i| (0..10).map(move |j| (0.15 + 0.3 * i as f64, 0.15 + 0.3 * j as f64))).collect();
        for kc in [default_case(CaseId::Q5Airy).unwrap(), default_case(CaseId::Q7Plus).unwrap()] {
            let w = TracyWidomKernel::for_case(&kc).unwrap();
            let r = factorization_residual(&kc, &w, &probe).unwrap();
            assert!(r < 1e-10, "{}: {r}", kc.case_id);
        }
        let kc = build_case(CaseId::H2Minus, &params(&[("nu", 1.0)])).unwrap();
        let w = TracyWidomKernel::for_case(&kc).unwrap();
        let r = factorization_residual(&kc, &w, &[(0.3, 0.7), (0.5, 0.5), (0.05, 0.95)]).unwrap();
        assert!(r < 1e-8, "bessel: {r}");
    }

    #[test]
    fn mismatched_kernel_fails_factorization() {
        let kc = build_case(CaseId::Q5Airy, &params(&[("shift", 1.0)])).unwrap();
        let w = TracyWidomKernel::airy(0.0);
        assert!(factorization_residual(&kc, &w, &[(0.0, 0.0), (0.5, 1.0)]).unwrap() > 0.01);
    }

    #[test]
    fn bounded_only_kernels_are_refused() {
        let kc = default_case(CaseId::Q3).unwrap();
        assert!(matches!(factorization_integral(&kc, 1.0, 1.0), Err(Error::NonIntegrable(_))));
    }

    #[test]
    fn oscillatory_identity_holds() {
        let probe = [(0.1, 0.1), (0.5, 2.0), (4.9, 0.2), (3.0, 3.0 + 1e-8)];
        let (re, im) = oscillatory_identity_residual(&probe);
        assert!(re < 1e-10 && im < 1e-10, "{re} {im}");
    }

    #[test]
    fn bessel_kernel_squares_the_hankel_operator() {
        let kc = build_case(CaseId::H2Minus, &params(&[("nu", 1.0)])).unwrap();
        let mg = crate::quadrature::multiplicative_grid(160, 1e-14).unwrap();
        let h = super::super::multiplicative_hankel(&kc, &mg).unwrap().matrix;
        let mut sq: Vec<f64> = crate::spectra::eigen_decompose(&h, false).unwrap().0.iter().map(|e| e * e).collect();
        sq.sort_by(|a, b| b.total_cmp(a));
        let w = TracyWidomKernel::bessel(1.0);
        let g = gauss_legendre(64, 0.0, 1.0).unwrap();
        let mut ev = crate::spectra::eigen_decompose(&tw_operator(&w, &g).matrix, false).unwrap().0;
        ev.sort_by(|a, b| b.total_cmp(a));
        for k in 0..4 {
            assert!((sq[k] - ev[k]).abs() < 1e-6, "{k}: {} vs {}", sq[k], ev[k]);
        }
    }
}
