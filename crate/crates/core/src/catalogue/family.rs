//! Coefficient families `(a, b)` of the Sturm-Liouville operator and the
//! functions `alpha`, `beta` they induce on the Hankel variable `u = x + y`.

use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilyTag {
    Q,
    H,
    C,
}

impl FamilyTag {
    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Q => "Q",
            FamilyTag::H => "H",
            FamilyTag::C => "C",
        }
    }
}

impl std::fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A coefficient function from one of the three families closed under
/// `f''' = A f'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum FamilyFunction {
    /// `c2 x^2 + c1 x + c0`
    Quadratic { c2: f64, c1: f64, c0: f64 },
    /// `k1 cosh(t x) + k2 sinh(t x) + k3`
    Hyperbolic { t: f64, k1: f64, k2: f64, k3: f64 },
    /// `k1 cos(t x) + k2 sin(t x) + k3`
    Circular { t: f64, k1: f64, k2: f64, k3: f64 },
}

impl FamilyFunction {
    pub fn tag(&self) -> FamilyTag {
        match self {
            FamilyFunction::Quadratic { .. } => FamilyTag::Q,
            FamilyFunction::Hyperbolic { .. } => FamilyTag::H,
            FamilyFunction::Circular { .. } => FamilyTag::C,
        }
    }

    /// Frequency `t`, or `None` for the quadratic family.
    pub fn frequency(&self) -> Option<f64> {
        match *self {
            FamilyFunction::Quadratic { .. } => None,
            FamilyFunction::Hyperbolic { t, .. } | FamilyFunction::Circular { t, .. } => Some(t),
        }
    }

    pub fn is_constant(&self) -> bool {
        match *self {
            FamilyFunction::Quadratic { c2, c1, .. } => c2 == 0.0 && c1 == 0.0,
            FamilyFunction::Hyperbolic { k1, k2, .. } | FamilyFunction::Circular { k1, k2, .. } => {
                k1 == 0.0 && k2 == 0.0
            }
        }
    }

    /// The constant `A` with `f''' = A f'`.
    pub fn third_derivative_constant(&self) -> f64 {
        match *self {
            FamilyFunction::Quadratic { .. } => 0.0,
            FamilyFunction::Hyperbolic { t, .. } => t * t,
            FamilyFunction::Circular { t, .. } => -t * t,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            FamilyFunction::Quadratic { c2, c1, c0 } => (c2 * x + c1) * x + c0,
            FamilyFunction::Hyperbolic { t, k1, k2, k3 } => k1 * (t * x).cosh() + k2 * (t * x).sinh() + k3,
            FamilyFunction::Circular { t, k1, k2, k3 } => k1 * (t * x).cos() + k2 * (t * x).sin() + k3,
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match *self {
            FamilyFunction::Quadratic { c2, c1, .. } => 2.0 * c2 * x + c1,
            FamilyFunction::Hyperbolic { t, k1, k2, .. } => t * (k1 * (t * x).sinh() + k2 * (t * x).cosh()),
            FamilyFunction::Circular { t, k1, k2, .. } => t * (-k1 * (t * x).sin() + k2 * (t * x).cos()),
        }
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        match *self {
            FamilyFunction::Quadratic { c2, .. } => 2.0 * c2,
            FamilyFunction::Hyperbolic { t, k1, k2, .. } => t * t * (k1 * (t * x).cosh() + k2 * (t * x).sinh()),
            FamilyFunction::Circular { t, k1, k2, .. } => -t * t * (k1 * (t * x).cos() + k2 * (t * x).sin()),
        }
    }

    /// `F(u)` in the factorization `f(x) - f(y) = F(x + y) G(x - y)`.
    pub fn sum_factor(&self, u: f64) -> f64 {
        match *self {
            FamilyFunction::Quadratic { c2, c1, .. } => c2 * u + c1,
            FamilyFunction::Hyperbolic { t, k1, k2, .. } => {
                let w = 0.5 * t * u;
                2.0 * (k1 * w.sinh() + k2 * w.cosh())
            }
            FamilyFunction::Circular { t, k1, k2, .. } => {
                let w = 0.5 * t * u;
                2.0 * (-k1 * w.sin() + k2 * w.cos())
            }
        }
    }

    /// `F'(u)`.
    pub fn sum_factor_prime(&self, u: f64) -> f64 {
        match *self {
            FamilyFunction::Quadratic { c2, .. } => c2,
            FamilyFunction::Hyperbolic { t, k1, k2, .. } => {
                let w = 0.5 * t * u;
                t * (k1 * w.cosh() + k2 * w.sinh())
            }
            FamilyFunction::Circular { t, k1, k2, .. } => {
                let w = 0.5 * t * u;
                t * (-k1 * w.cos() - k2 * w.sin())
            }
        }
    }

    /// `G(v)` in the factorization `f(x) - f(y) = F(x + y) G(x - y)`; it
    /// depends only on the family and `t`.
    pub fn difference_factor(&self, v: f64) -> f64 {
        match *self {
            FamilyFunction::Quadratic { .. } => v,
            FamilyFunction::Hyperbolic { t, .. } => (0.5 * t * v).sinh(),
            FamilyFunction::Circular { t, .. } => (0.5 * t * v).sin(),
        }
    }

    fn describe(&self) -> String {
        match self.frequency() {
            Some(t) => format!("{} (t = {t})", self.tag()),
            None => self.tag().to_string(),
        }
    }
}

/// The pair `(a, b)`: diffusion coefficient `a` with `a(0) = 0` and potential `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientFamily {
    pub a: FamilyFunction,
    pub b: FamilyFunction,
}

impl CoefficientFamily {
    /// Validates the invariants on `a`; `b` is checked lazily by [`beta_of`].
    pub fn new(a: FamilyFunction, b: FamilyFunction) -> Result<Self> {
        for f in [&a, &b] {
            if let Some(t) = f.frequency() {
                if !(t > 0.0) || !t.is_finite() {
                    return Err(Error::InvalidParams(format!("frequency t must be positive, got {t}")));
                }
            }
        }
        if a.is_constant() {
            return Err(Error::InvalidParams("a must be non-constant".into()));
        }
        let a0 = a.eval(0.0);
        let scale = match a {
            FamilyFunction::Quadratic { c2, c1, c0 } => c2.abs() + c1.abs() + c0.abs(),
            FamilyFunction::Hyperbolic { k1, k2, k3, .. } | FamilyFunction::Circular { k1, k2, k3, .. } => {
                k1.abs() + k2.abs() + k3.abs()
            }
        };
        if a0.abs() > 1e-14 * scale {
            return Err(Error::InvalidParams(format!("a(0) must vanish, got {a0}")));
        }
        Ok(Self { a, b })
    }

    /// `a = q2 x^2 + q1 x`, `b = b2 x^2 + b1 x + b0`.
    pub fn quadratic(q2: f64, q1: f64, b2: f64, b1: f64, b0: f64) -> Result<Self> {
        Self::new(
            FamilyFunction::Quadratic { c2: q2, c1: q1, c0: 0.0 },
            FamilyFunction::Quadratic { c2: b2, c1: b1, c0: b0 },
        )
    }

    /// `a = h1 cosh tx + h2 sinh tx + h3`, `b = h4 cosh tx + h5 sinh tx + h6`.
    pub fn hyperbolic(t: f64, h: [f64; 6]) -> Result<Self> {
        Self::new(
            FamilyFunction::Hyperbolic { t, k1: h[0], k2: h[1], k3: h[2] },
            FamilyFunction::Hyperbolic { t, k1: h[3], k2: h[4], k3: h[5] },
        )
    }

    /// `a = c1 cos tx + c2 sin tx + c3`, `b = c4 cos tx + c5 sin tx + c6`.
    pub fn circular(t: f64, c: [f64; 6]) -> Result<Self> {
        Self::new(
            FamilyFunction::Circular { t, k1: c[0], k2: c[1], k3: c[2] },
            FamilyFunction::Circular { t, k1: c[3], k2: c[4], k3: c[5] },
        )
    }

    pub fn tag(&self) -> FamilyTag {
        self.a.tag()
    }

    /// `A` with `a''' = A a'`.
    pub fn a_constant(&self) -> f64 {
        self.a.third_derivative_constant()
    }

    /// `B` with `b''' = B b'`; a constant `b` takes the value of `A`.
    pub fn b_constant(&self) -> f64 {
        if self.b.is_constant() {
            self.a_constant()
        } else {
            self.b.third_derivative_constant()
        }
    }

    /// Checks that `b` lies in the family of `a` (a constant `b` always does).
    pub fn check_admissible(&self) -> Result<()> {
        if self.b.is_constant() {
            return Ok(());
        }
        let same_tag = self.a.tag() == self.b.tag();
        let same_t = match (self.a.frequency(), self.b.frequency()) {
            (Some(s), Some(t)) => (s - t).abs() <= 1e-14 * s.abs(),
            (None, None) => true,
            _ => false,
        };
        if same_tag && same_t {
            Ok(())
        } else {
            Err(Error::FamilyMismatch { a: self.a.describe(), b: self.b.describe() })
        }
    }

    /// Distance from `u` to the nearest zero of the sum factor of `a`, which
    /// is where `alpha` and `beta` have their poles.
    pub fn pole_distance(&self, u: f64) -> f64 {
        match self.a {
            FamilyFunction::Quadratic { c2, c1, .. } => {
                if c2 == 0.0 {
                    f64::INFINITY
                } else {
                    (u + c1 / c2).abs()
                }
            }
            FamilyFunction::Hyperbolic { t, k1, k2, .. } => {
                // k1 sinh w + k2 cosh w = 0  <=>  tanh w = -k2 / k1
                if k1 == 0.0 || (k2 / k1).abs() >= 1.0 {
                    f64::INFINITY
                } else {
                    (u - 2.0 * (-k2 / k1).atanh() / t).abs()
                }
            }
            FamilyFunction::Circular { t, k1, k2, .. } => {
                // -k1 sin w + k2 cos w = 0 with w = t u / 2; zeros repeat with period 2 pi / t in u
                let w0 = if k1 == 0.0 { std::f64::consts::FRAC_PI_2 } else { (k2 / k1).atan() };
                let period = 2.0 * std::f64::consts::PI / t;
                let u0 = 2.0 * w0 / t;
                let r = (u - u0).rem_euclid(period);
                r.min(period - r)
            }
        }
    }
}

/// `alpha(u) = 2 F_a'(u) / F_a(u)`, satisfying
/// `alpha(x + y) (a(x) - a(y)) = a'(x) - a'(y)`.
pub fn alpha_of(fam: &CoefficientFamily) -> impl Fn(f64) -> f64 {
    let a = fam.a;
    move |u| 2.0 * a.sum_factor_prime(u) / a.sum_factor(u)
}

/// `beta(u) = F_b(u) / F_a(u)`, satisfying
/// `beta(x + y) (a(x) - a(y)) = b(x) - b(y)`.
pub fn beta_of(fam: &CoefficientFamily) -> Result<impl Fn(f64) -> f64> {
    fam.check_admissible()?;
    let a = fam.a;
    let b = fam.b;
    let constant = b.is_constant();
    Ok(move |u: f64| if constant { 0.0 } else { b.sum_factor(u) / a.sum_factor(u) })
}

/// `(F(x + y), G(x - y))` with `F G = a(x) - a(y)`.
pub fn factor_difference(fam: &CoefficientFamily, x: f64, y: f64) -> (f64, f64) {
    (fam.a.sum_factor(x + y), fam.a.difference_factor(x - y))
}
