//! Closed-form kernels with analytic first and second derivatives, evaluated
//! in their native variable (`u` on the half-line or period, `x` on `(0, 1)`
//! for multiplicative kernels).

use crate::specfun::{
    airy_ai_both, airy_bi, airy_bi_prime, bessel_j_unchecked, bessel_k, gauss_2f1, hermite_pair, laguerre_derivative,
    laguerre_pair,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub(crate) enum Kernel {
    /// `c1 + c2 / (q2 u + q1)`
    Carleman { c1: f64, c2: f64, q2: f64, q1: f64 },
    /// `exp(-k u)`
    Exponential { k: f64 },
    /// `Ai(u + s)`
    Airy { shift: f64 },
    /// `A Ai(-u) + B Bi(-u)`, the combination of `u^(1/2) J_(+-1/3)(2/3 u^(3/2))`.
    AiryOscillatory { ai: f64, bi: f64 },
    /// `u^(-1/2) K_1(sqrt u)`
    BesselK1,
    /// `u^(-1/2) J_1(sqrt u)`
    BesselJ1,
    /// `exp(-(u + s)) / (u + s)`
    ExpOverLinear { shift: f64 },
    /// `(k1 cos(u + s) + k2 sin(u + s)) / (u + s)`
    TrigOverLinear { shift: f64, k1: f64, k2: f64 },
    /// `exp(-u) L_n^(1)(2u)`
    LaguerreExp { n: usize },
    /// `x^p`
    Power { p: f64 },
    /// `sqrt(x) K_nu(2 sqrt x)`
    SqrtBesselK { nu: f64 },
    /// `sqrt(x) J_nu(2 sqrt x)`
    SqrtBesselJ { nu: f64 },
    /// `x^(-1/2) K_nu(2 / sqrt x)`
    InvSqrtBesselK { nu: f64 },
    /// `x^(-1/2) J_nu(2 / sqrt x)`
    InvSqrtBesselJ { nu: f64 },
    /// `x F(mu + 1, nu + 1; 2; x)`
    Hypergeometric { mu: f64, nu: f64 },
    /// `c1 + c2 / (p + m x)`
    Rational { c1: f64, c2: f64, p: f64, m: f64 },
    /// `c7 cos w - c8 (cosec w - 2 sin w)` with `w = t u / 2`.
    Periodic { t: f64, c7: f64, c8: f64 },
    /// `He_n(u) exp(-u^2 / 4)`
    Hermite { n: usize },
}

impl Kernel {
    /// `[f, f', f'']` at `z` in the native variable.
    pub(crate) fn eval(&self, z: f64) -> [f64; 3] {
        match *self {
            Kernel::Carleman { c1, c2, q2, q1 } => {
                let d = q2 * z + q1;
                [c1 + c2 / d, -c2 * q2 / (d * d), 2.0 * c2 * q2 * q2 / (d * d * d)]
            }
            Kernel::Exponential { k } => {
                let e = (-k * z).exp();
                [e, -k * e, k * k * e]
            }
            Kernel::Airy { shift } => {
                let w = z + shift;
                let (ai, aip) = airy_ai_both(w);
                [ai.value, aip.value, w * ai.value]
            }
            Kernel::AiryOscillatory { ai: ca, bi: cb } => {
                let (ai, aip) = airy_ai_both(-z);
                let bi = airy_bi(-z).value;
                let bip = airy_bi_prime(-z).value;
                let f = ca * ai.value + cb * bi;
                [f, -(ca * aip.value + cb * bip), -z * f]
            }
            Kernel::BesselK1 => {
                let w = z.sqrt();
                let k = |nu: f64| bessel_k(nu, w).map(|r| r.value).unwrap_or(f64::NAN);
                [k(1.0) / w, -0.5 * k(2.0) / z, 0.25 * k(3.0) / (z * w)]
            }
            Kernel::BesselJ1 => {
                let w = z.sqrt();
                let j = |nu: f64| bessel_j_unchecked(nu, w).value;
                [j(1.0) / w, -0.5 * j(2.0) / z, 0.25 * j(3.0) / (z * w)]
            }
            Kernel::ExpOverLinear { shift } => {
                let w = z + shift;
                let e = (-w).exp();
                let r = 1.0 / w;
                [e * r, -e * (r + r * r), e * (r + 2.0 * r * r + 2.0 * r * r * r)]
            }
            Kernel::TrigOverLinear { shift, k1, k2 } => {
                let w = z + shift;
                let (s, c) = w.sin_cos();
                let t0 = k1 * c + k2 * s;
                let t1 = -k1 * s + k2 * c;
                let r = 1.0 / w;
                [t0 * r, t1 * r - t0 * r * r, -t0 * r - 2.0 * t1 * r * r + 2.0 * t0 * r * r * r]
            }
            Kernel::LaguerreExp { n } => {
                let e = (-z).exp();
                let p = laguerre_pair(n, 1.0, 2.0 * z).0;
                let dp = laguerre_derivative(n, 1.0, 2.0 * z);
                let ddp = if n < 2 { 0.0 } else { laguerre_pair(n - 2, 3.0, 2.0 * z).0 };
                [e * p, e * (-p + 2.0 * dp), e * (p - 4.0 * dp + 4.0 * ddp)]
            }
            Kernel::Power { p } => [z.powf(p), p * z.powf(p - 1.0), p * (p - 1.0) * z.powf(p - 2.0)],
            Kernel::SqrtBesselK { nu } => sqrt_bessel_k(nu, z),
            Kernel::SqrtBesselJ { nu } => sqrt_bessel_j(nu, z),
            Kernel::InvSqrtBesselK { nu } => reciprocal(sqrt_bessel_k(nu, 1.0 / z), z),
            Kernel::InvSqrtBesselJ { nu } => reciprocal(sqrt_bessel_j(nu, 1.0 / z), z),
            Kernel::Hypergeometric { mu, nu } => {
                let (a, b) = (mu + 1.0, nu + 1.0);
                let f = |da: f64, c: f64| gauss_2f1(a + da, b + da, c, z).map(|r| r.value).unwrap_or(f64::NAN);
                let f0 = f(0.0, 2.0);
                let f1 = 0.5 * a * b * f(1.0, 3.0);
                let f2 = a * b * (a + 1.0) * (b + 1.0) / 6.0 * f(2.0, 4.0);
                [z * f0, f0 + z * f1, 2.0 * f1 + z * f2]
            }
            Kernel::Rational { c1, c2, p, m } => {
                let d = p + m * z;
                [c1 + c2 / d, -c2 * m / (d * d), 2.0 * c2 * m * m / (d * d * d)]
            }
            Kernel::Periodic { t, c7, c8 } => {
                let r = 0.5 * t;
                let (s, c) = (r * z).sin_cos();
                let mut out = [c7 * c, -c7 * s, -c7 * c];
                // the cosecant part is singular at multiples of the half-period
                if c8 != 0.0 {
                    out[0] -= c8 * (1.0 / s - 2.0 * s);
                    out[1] -= c8 * (-c / (s * s) - 2.0 * c);
                    out[2] -= c8 * ((s * s + 2.0 * c * c) / (s * s * s) + 2.0 * s);
                }
                [out[0], r * out[1], r * r * out[2]]
            }
            Kernel::Hermite { n } => {
                let (h, hm) = hermite_pair(n, z);
                [h, n as f64 * hm - 0.5 * z * h, (0.25 * z * z - n as f64 - 0.5) * h]
            }
        }
    }

    pub(crate) fn value(&self, z: f64) -> f64 {
        match *self {
            // cheap paths for the kernels that dominate matrix assembly
            Kernel::Exponential { k } => (-k * z).exp(),
            Kernel::Airy { shift } => crate::specfun::airy_ai(z + shift).value,
            Kernel::Power { p } => z.powf(p),
            Kernel::Hermite { n } => hermite_pair(n, z).0,
            Kernel::Carleman { c1, c2, q2, q1 } => c1 + c2 / (q2 * z + q1),
            Kernel::ExpOverLinear { shift } => (-(z + shift)).exp() / (z + shift),
            _ => self.eval(z)[0],
        }
    }
}

/// `sqrt(x) K_nu(2 sqrt x)` and its derivatives, with `w = 2 sqrt x`:
/// `f' = K/w + K'(w)`, `f'' = (2K/w)(1 + (nu^2 - 1)/w^2)`.
fn sqrt_bessel_k(nu: f64, x: f64) -> [f64; 3] {
    let w = 2.0 * x.sqrt();
    let k0 = bessel_k(nu, w).map(|r| r.value).unwrap_or(f64::NAN);
    let k1 = bessel_k(nu + 1.0, w).map(|r| r.value).unwrap_or(f64::NAN);
    let kp = nu / w * k0 - k1;
    [0.5 * w * k0, k0 / w + kp, 2.0 * k0 / w * (1.0 + (nu * nu - 1.0) / (w * w))]
}

/// `sqrt(x) J_nu(2 sqrt x)`; `f'' = -(2J/w)(1 + (1 - nu^2)/w^2)`.
fn sqrt_bessel_j(nu: f64, x: f64) -> [f64; 3] {
    let w = 2.0 * x.sqrt();
    let j0 = bessel_j_unchecked(nu, w).value;
    let j1 = bessel_j_unchecked(nu + 1.0, w).value;
    let jp = nu / w * j0 - j1;
    [0.5 * w * j0, j0 / w + jp, -2.0 * j0 / w * (1.0 + (1.0 - nu * nu) / (w * w))]
}

/// Derivatives of `g(x) = f(1/x)` from those of `f` at `1/x`.
fn reciprocal(f: [f64; 3], x: f64) -> [f64; 3] {
    let x2 = x * x;
    [f[0], -f[1] / x2, f[2] / (x2 * x2) + 2.0 * f[1] / (x2 * x)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_kernels() -> Vec<(Kernel, f64, f64)> {
        vec![
            (Kernel::Carleman { c1: 0.3, c2: 1.0, q2: 1.0, q1: 0.5 }, 0.1, 5.0),
            (Kernel::Exponential { k: 1.3 }, 0.0, 5.0),
            (Kernel::Airy { shift: -1.0 }, 0.0, 6.0),
            (Kernel::AiryOscillatory { ai: 3.0, bi: 0.0 }, 0.1, 5.0),
            (Kernel::BesselK1, 0.1, 8.0),
            (Kernel::BesselJ1, 0.1, 8.0),
            (Kernel::ExpOverLinear { shift: 1.0 }, 0.0, 5.0),
            (Kernel::TrigOverLinear { shift: 0.5, k1: 1.0, k2: 0.4 }, 0.0, 5.0),
            (Kernel::LaguerreExp { n: 3 }, 0.0, 5.0),
            (Kernel::Power { p: 1.5 }, 0.05, 1.0),
            (Kernel::SqrtBesselK { nu: 0.5 }, 0.05, 1.0),
            (Kernel::SqrtBesselJ { nu: 2.0 }, 0.05, 1.0),
            (Kernel::InvSqrtBesselK { nu: 1.0 }, 0.1, 1.0),
            (Kernel::InvSqrtBesselJ { nu: 1.0 }, 0.1, 1.0),
            (Kernel::Hypergeometric { mu: 1.5, nu: -0.5 }, 0.05, 0.9),
            (Kernel::Rational { c1: 0.2, c2: 1.0, p: 1.0, m: 1.0 }, 0.0, 1.0),
            (Kernel::Periodic { t: 2.0, c7: 1.0, c8: 0.5 }, 0.2, 2.9),
            (Kernel::Hermite { n: 4 }, -3.0, 3.0),
        ]
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for (k, lo, hi) in all_kernels() {
            for i in 1..20 {
                let z = lo + (hi - lo) * i as f64 / 20.0;
                let h = 1e-5;
                let [f, f1, f2] = k.eval(z);
                let [fp, f1p, _] = k.eval(z + h);
                let [fm, f1m, _] = k.eval(z - h);
                let d1 = (fp - fm) / (2.0 * h);
                let d2 = (f1p - f1m) / (2.0 * h);
                let scale = 1.0 + f.abs() + f1.abs() + f2.abs();
                assert!((d1 - f1).abs() < 1e-6 * scale, "{k:?} at {z}: {d1} vs {f1}");
                assert!((d2 - f2).abs() < 1e-6 * scale, "{k:?} at {z}: {d2} vs {f2}");
                assert!((k.value(z) - f).abs() <= 1e-14 * (1.0 + f.abs()));
            }
        }
    }

    #[test]
    fn oscillatory_airy_matches_bessel_combination() {
        // u^(1/2) J_(1/3)(2/3 u^(3/2)) and u^(1/2) J_(-1/3)(...) via the ascending series
        let series = |nu: f64, u: f64| {
            let z = 2.0 / 3.0 * u.powf(1.5);
            let mut term = (0.5 * z).powf(nu) / crate::specfun::gamma_fn(nu + 1.0).unwrap().value;
            let mut sum = term;
            for k in 1..60 {
                term *= -(0.5 * z) * (0.5 * z) / (k as f64 * (k as f64 + nu));
                sum += term;
            }
            u.sqrt() * sum
        };
        for u in [0.5, 1.3, 2.7] {
            let plus = Kernel::AiryOscillatory { ai: 1.5, bi: -0.75f64.sqrt() }.eval(u)[0];
            let minus = Kernel::AiryOscillatory { ai: 1.5, bi: 0.75f64.sqrt() }.eval(u)[0];
            assert!((plus - series(1.0 / 3.0, u)).abs() < 1e-12, "{plus}");
            assert!((minus - series(-1.0 / 3.0, u)).abs() < 1e-12, "{minus}");
        }
    }
}
