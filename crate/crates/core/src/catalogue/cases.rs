//! The catalogue of commuting kernel/operator pairs.

use super::family::{alpha_of, beta_of, CoefficientFamily, FamilyFunction, FamilyTag};
use super::kernel::Kernel;
use crate::error::{Error, Result};
use crate::quadrature::DomainKind;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Case parameters by name.
pub type Params = BTreeMap<String, f64>;

/// Distance below which a point counts as sitting on a coefficient pole.
pub const POLE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseId {
    Q3,
    Q4,
    Q5Airy,
    Q5Oscillatory,
    Q6Plus,
    Q6Minus,
    Q7Plus,
    Q7Minus,
    Q8Laguerre,
    H1,
    H2Plus,
    H2Minus,
    H3,
    H4Plus,
    H4Minus,
    H5,
    H6,
    H7,
    CGeneral,
    /// Hermite-function kernels; no commuting differential operator is attached.
    Hermite,
}

impl CaseId {
    pub const ALL: [CaseId; 20] = [
        CaseId::Q3,
        CaseId::Q4,
        CaseId::Q5Airy,
        CaseId::Q5Oscillatory,
        CaseId::Q6Plus,
        CaseId::Q6Minus,
        CaseId::Q7Plus,
        CaseId::Q7Minus,
        CaseId::Q8Laguerre,
        CaseId::H1,
        CaseId::H2Plus,
        CaseId::H2Minus,
        CaseId::H3,
        CaseId::H4Plus,
        CaseId::H4Minus,
        CaseId::H5,
        CaseId::H6,
        CaseId::H7,
        CaseId::CGeneral,
        CaseId::Hermite,
    ];

    /// Stable identifier used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            CaseId::Q3 => "Q3",
            CaseId::Q4 => "Q4",
            CaseId::Q5Airy => "Q5_airy",
            CaseId::Q5Oscillatory => "Q5_oscillatory",
            CaseId::Q6Plus => "Q6_plus",
            CaseId::Q6Minus => "Q6_minus",
            CaseId::Q7Plus => "Q7_plus",
            CaseId::Q7Minus => "Q7_minus",
            CaseId::Q8Laguerre => "Q8_laguerre",
            CaseId::H1 => "H1",
            CaseId::H2Plus => "H2_plus",
            CaseId::H2Minus => "H2_minus",
            CaseId::H3 => "H3",
            CaseId::H4Plus => "H4_plus",
            CaseId::H4Minus => "H4_minus",
            CaseId::H5 => "H5",
            CaseId::H6 => "H6",
            CaseId::H7 => "H7",
            CaseId::CGeneral => "C_general",
            CaseId::Hermite => "hermite",
        }
    }

    pub fn info(self) -> &'static CaseInfo {
        REGISTRY.iter().find(|c| c.id == self).expect("every case is registered")
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParams(format!("unknown case id '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Integrability {
    /// Bounded at best; the kernel is not square integrable.
    BoundedOnly,
    HilbertSchmidt,
    FiniteRank(usize),
}

impl Integrability {
    pub fn is_hilbert_schmidt(self) -> bool {
        !matches!(self, Integrability::BoundedOnly)
    }
}

/// Exponential decay data: `sup_{x >= 0} |phi(x)| e^(epsilon x) <= bound`.
/// `delta` and `strip` record the half-plane margin and strip half-width on
/// which the decay is assumed; `truncation` is the half-line cut-off used for
/// discretization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayInfo {
    pub epsilon: f64,
    pub delta: f64,
    pub strip: f64,
    pub bound: f64,
    pub truncation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: f64,
    pub constraint: &'static str,
}

/// Registry entry describing a case for listings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseInfo {
    pub id: CaseId,
    pub name: &'static str,
    pub family: Option<FamilyTag>,
    pub params: &'static [ParamSpec],
    pub anchor: &'static str,
    pub kernel: &'static str,
}

const fn p(name: &'static str, default: f64, constraint: &'static str) -> ParamSpec {
    ParamSpec { name, default, constraint }
}

pub static REGISTRY: [CaseInfo; 20] = [
    CaseInfo {
        id: CaseId::Q3,
        name: "Q3",
        family: Some(FamilyTag::Q),
        params: &[p("q2", 1.0, "q2 > 0"), p("q1", 0.0, "q1 >= 0"), p("c1", 0.0, ""), p("c2", 1.0, "")],
        anchor: "Eq. 3.4",
        kernel: "c1 + c2/(q2 u + q1)",
    },
    CaseInfo {
        id: CaseId::Q4,
        name: "Q4",
        family: Some(FamilyTag::Q),
        params: &[p("q1", 1.0, "b1/q1 > 0"), p("b1", 1.0, "b1/q1 > 0")],
        anchor: "Example Q(iv)",
        kernel: "exp(-sqrt(b1/q1) u)",
    },
    CaseInfo {
        id: CaseId::Q5Airy,
        name: "Q5_airy",
        family: Some(FamilyTag::Q),
        params: &[p("shift", 0.0, "finite")],
        anchor: "Eq. 3.5",
        kernel: "Ai(u + shift)",
    },
    CaseInfo {
        id: CaseId::Q5Oscillatory,
        name: "Q5_oscillatory",
        family: Some(FamilyTag::Q),
        params: &[p("c1", 1.0, ""), p("c2", 1.0, "")],
        anchor: "Eq. 3.6",
        kernel: "c1 u^(1/2) J_(1/3)(2/3 u^(3/2)) + c2 u^(1/2) J_(-1/3)(2/3 u^(3/2))",
    },
    CaseInfo {
        id: CaseId::Q6Plus,
        name: "Q6_plus",
        family: Some(FamilyTag::Q),
        params: &[],
        anchor: "Eq. 3.8",
        kernel: "u^(-1/2) K_1(sqrt u)",
    },
    CaseInfo {
        id: CaseId::Q6Minus,
        name: "Q6_minus",
        family: Some(FamilyTag::Q),
        params: &[],
        anchor: "Eq. 3.8",
        kernel: "u^(-1/2) J_1(sqrt u)",
    },
    CaseInfo {
        id: CaseId::Q7Plus,
        name: "Q7_plus",
        family: Some(FamilyTag::Q),
        params: &[p("shift", 1.0, "shift >= 0")],
        anchor: "Eq. 3.12",
        kernel: "exp(-(u + shift))/(u + shift)",
    },
    CaseInfo {
        id: CaseId::Q7Minus,
        name: "Q7_minus",
        family: Some(FamilyTag::Q),
        params: &[p("shift", 0.0, "shift >= 0"), p("kappa1", 1.0, ""), p("kappa2", 0.0, "")],
        anchor: "Eq. 3.12",
        kernel: "(kappa1 cos(u + shift) + kappa2 sin(u + shift))/(u + shift)",
    },
    CaseInfo {
        id: CaseId::Q8Laguerre,
        name: "Q8_laguerre",
        family: Some(FamilyTag::Q),
        params: &[p("n", 2.0, "integer 0 <= n <= 60")],
        anchor: "Eq. 3.17",
        kernel: "exp(-u) L_n^(1)(2u)",
    },
    CaseInfo {
        id: CaseId::H1,
        name: "H1",
        family: Some(FamilyTag::H),
        params: &[p("h1", 1.0, "h1 != 0"), p("h4", 0.0, "1 + h4/h1 >= 0")],
        anchor: "Eq. 4.7",
        kernel: "x^p, 4p(p-1) = h4/h1, p > 0",
    },
    CaseInfo {
        id: CaseId::H2Plus,
        name: "H2_plus",
        family: Some(FamilyTag::H),
        params: &[p("nu", 1.0, "nu >= 0")],
        anchor: "Eq. 4.9",
        kernel: "sqrt(x) K_nu(2 sqrt x)",
    },
    CaseInfo {
        id: CaseId::H2Minus,
        name: "H2_minus",
        family: Some(FamilyTag::H),
        params: &[p("nu", 1.0, "nu >= 0")],
        anchor: "Eq. 4.9",
        kernel: "sqrt(x) J_nu(2 sqrt x)",
    },
    CaseInfo {
        id: CaseId::H3,
        name: "H3",
        family: Some(FamilyTag::H),
        params: &[p("h2", 1.0, "h2 != 0"), p("h5", 3.0, "h5/h2 > 0")],
        anchor: "Eq. 4.14",
        kernel: "x^p, 4p(p+1) = h5/h2, p > 0",
    },
    CaseInfo {
        id: CaseId::H4Plus,
        name: "H4_plus",
        family: Some(FamilyTag::H),
        params: &[p("nu", 1.0, "nu >= 0")],
        anchor: "Eq. 4.15",
        kernel: "x^(-1/2) K_nu(2/sqrt x)",
    },
    CaseInfo {
        id: CaseId::H4Minus,
        name: "H4_minus",
        family: Some(FamilyTag::H),
        params: &[p("nu", 1.0, "nu >= 0")],
        anchor: "Eq. 4.15",
        kernel: "x^(-1/2) J_nu(2/sqrt x)",
    },
    CaseInfo {
        id: CaseId::H5,
        name: "H5",
        family: Some(FamilyTag::H),
        params: &[p("mu", 1.5, "finite; nu = 1 - mu")],
        anchor: "Eq. 4.16",
        kernel: "x F(mu+1, nu+1; 2; x), |x| <= 0.95",
    },
    CaseInfo {
        id: CaseId::H6,
        name: "H6",
        family: Some(FamilyTag::H),
        params: &[],
        anchor: "Eq. 4.17",
        kernel: "classification only",
    },
    CaseInfo {
        id: CaseId::H7,
        name: "H7",
        family: Some(FamilyTag::H),
        params: &[p("h1", 0.0, "h1 != h2"), p("h2", 1.0, "h1 + h2 + (h2 - h1) x != 0 on [0, 1]"), p("c1", 0.0, ""), p("c2", 1.0, "")],
        anchor: "Eq. 4.19",
        kernel: "c1 + c2/(h1 + h2 + (h2 - h1) x)",
    },
    CaseInfo {
        id: CaseId::CGeneral,
        name: "C_general",
        family: Some(FamilyTag::C),
        params: &[p("t", 2.0, "t > 0"), p("c7", 1.0, ""), p("c8", 0.0, "")],
        anchor: "Eq. 5.6",
        kernel: "c7 cos(tu/2) - c8 (cosec(tu/2) - 2 sin(tu/2))",
    },
    CaseInfo {
        id: CaseId::Hermite,
        name: "hermite",
        family: None,
        params: &[p("n", 4.0, "integer 0 <= n <= 60")],
        anchor: "Corollary 6.4",
        kernel: "He_n(u) exp(-u^2/4)",
    },
];

/// A catalogued kernel together with its commuting coefficient pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelCase {
    pub case_id: CaseId,
    pub params: Params,
    pub family: Option<CoefficientFamily>,
    pub domain: DomainKind,
    pub decay: Option<DecayInfo>,
    pub integrability: Integrability,
    pub(crate) kernel: Kernel,
    /// Additive shift applied to the argument, `phi(u + offset)`.
    pub offset: f64,
    /// Range of each coordinate used for pointwise probes, in the additive variable.
    pub probe_range: (f64, f64),
    /// Period of the kernel on the periodic domain.
    pub period: Option<f64>,
}

impl KernelCase {
    /// Kernel value at `z` in the native variable: `u = x + y` on additive
    /// domains, `x y` on the multiplicative one.
    pub fn kernel(&self, z: f64) -> f64 {
        self.kernel.value(z + self.offset)
    }

    /// `[phi, phi', phi'']` in the native variable.
    pub fn kernel_derivatives(&self, z: f64) -> [f64; 3] {
        self.kernel.eval(z + self.offset)
    }

    /// `[phi, phi', phi'']` in the additive variable `u`. Multiplicative
    /// kernels are read through `x = exp(-2u)`.
    pub fn additive(&self, u: f64) -> [f64; 3] {
        match self.domain {
            DomainKind::UnitIntervalMultiplicative => {
                let x = (-2.0 * u).exp();
                let [r, r1, r2] = self.kernel.eval(x);
                [r, -2.0 * x * r1, 4.0 * x * r1 + 4.0 * x * x * r2]
            }
            _ => self.kernel.eval(u + self.offset),
        }
    }

    /// Same case with the argument shifted by `s` (half-line cases only).
    pub fn shifted(&self, s: f64) -> Result<Self> {
        if self.domain != DomainKind::HalfLine {
            return Err(Error::UnsupportedCase(format!("{} is not a half-line case", self.case_id)));
        }
        let mut out = self.clone();
        out.offset += s;
        Ok(out)
    }

    /// Half-line truncation point used for discretization.
    pub fn truncation(&self) -> f64 {
        self.decay.map(|d| d.truncation).unwrap_or(40.0)
    }

    /// Same kernel with `b` perturbed so that the commutation identity breaks:
    /// the linear (or first hyperbolic/circular) coefficient of `b` moves by `delta`.
    pub fn with_perturbed_b(&self, delta: f64) -> Result<Self> {
        let fam = self
            .family
            .ok_or_else(|| Error::UnsupportedCase(format!("{} has no coefficient pair", self.case_id)))?;
        let b = match fam.b {
            FamilyFunction::Quadratic { c2, c1, c0 } => FamilyFunction::Quadratic { c2, c1: c1 + delta, c0 },
            FamilyFunction::Hyperbolic { t, k1, k2, k3 } => FamilyFunction::Hyperbolic { t, k1: k1 + delta, k2, k3 },
            FamilyFunction::Circular { t, k1, k2, k3 } => FamilyFunction::Circular { t, k1: k1 + delta, k2, k3 },
        };
        let mut out = self.clone();
        out.family = Some(CoefficientFamily::new(fam.a, b)?);
        Ok(out)
    }

    /// `n` equispaced points of `[2 lo, 2 hi]`, the range of `x + y` over the probe square.
    pub fn ode_probe_points(&self, n: usize) -> Vec<f64> {
        let (lo, hi) = self.probe_range;
        (0..n).map(|i| 2.0 * lo + 2.0 * (hi - lo) * i as f64 / (n - 1).max(1) as f64).collect()
    }
}

fn param(params: &Params, info: &CaseInfo, name: &str) -> f64 {
    params
        .get(name)
        .copied()
        .or_else(|| info.params.iter().find(|p| p.name == name).map(|p| p.default))
        .expect("parameter is registered")
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

fn integer_param(v: f64, name: &str, max: usize) -> Result<usize> {
    if v < 0.0 || v.fract() != 0.0 || v > max as f64 {
        return Err(invalid(format!("{name} must be an integer in 0..={max}, got {v}")));
    }
    Ok(v as usize)
}

/// Supremum of `|phi(x)| e^(eps x)` over a dense sample of `[0, T]`, with 5% headroom.
fn sampled_decay_bound(kernel: &Kernel, epsilon: f64, truncation: f64) -> f64 {
    let n = 8000;
    let sup = (0..=n)
        .map(|i| {
            let x = truncation * i as f64 / n as f64;
            kernel.value(x).abs() * (epsilon * x).exp()
        })
        .fold(0.0, f64::max);
    1.05 * sup + f64::MIN_POSITIVE
}

fn exponential_decay(kernel: &Kernel, epsilon: f64, bound: Option<f64>) -> DecayInfo {
    let truncation = (20.0 / epsilon).max(40.0);
    DecayInfo {
        epsilon,
        delta: 0.5,
        strip: 1.0,
        bound: bound.unwrap_or_else(|| sampled_decay_bound(kernel, epsilon, truncation)),
        truncation,
    }
}

fn h_family(h1: f64, h2: f64, h4: f64, h5: f64) -> Result<CoefficientFamily> {
    CoefficientFamily::hyperbolic(2.0, [h1, h2, -h1, h4, h5, 0.0])
}

/// Builds a catalogued case. Missing parameters take their registered defaults.
pub fn build_case(id: CaseId, params: &Params) -> Result<KernelCase> {
    let info = id.info();
    for key in params.keys() {
        if !info.params.iter().any(|p| p.name == key) {
            return Err(invalid(format!("{id} has no parameter '{key}'")));
        }
    }
    for (k, v) in params {
        if !v.is_finite() {
            return Err(invalid(format!("parameter {k} must be finite")));
        }
    }
    let mut full = Params::new();
    for p in info.params {
        full.insert(p.name.to_string(), param(params, info, p.name));
    }
    let g = |name: &str| full[name];

    let mut domain = DomainKind::HalfLine;
    let mut decay = None;
    let mut period = None;
    let mut probe = (0.05, 5.0);
    let (kernel, family, integrability) = match id {
        CaseId::Q3 => {
            let (q2, q1) = (g("q2"), g("q1"));
            if !(q2 > 0.0) || q1 < 0.0 {
                return Err(invalid("Q3 needs q2 > 0 and q1 >= 0"));
            }
            let k = Kernel::Carleman { c1: g("c1"), c2: g("c2"), q2, q1 };
            (k, CoefficientFamily::quadratic(q2, q1, 0.0, 0.0, 0.0)?, Integrability::BoundedOnly)
        }
        CaseId::Q4 => {
            let (q1, b1) = (g("q1"), g("b1"));
            if q1 == 0.0 || !(b1 / q1 > 0.0) {
                return Err(invalid("Q4 needs q1 != 0 and b1/q1 > 0"));
            }
            let k = (b1 / q1).sqrt();
            let kernel = Kernel::Exponential { k };
            decay = Some(exponential_decay(&kernel, k, None));
            probe = (0.0, 5.0);
            (kernel, CoefficientFamily::quadratic(0.0, q1, 0.0, b1, 0.0)?, Integrability::FiniteRank(1))
        }
        CaseId::Q5Airy => {
            let s = g("shift");
            let kernel = Kernel::Airy { shift: s };
            decay = Some(exponential_decay(&kernel, 1.0, None));
            probe = (0.0, 5.0);
            (kernel, CoefficientFamily::quadratic(0.0, 1.0, 1.0, s, 0.0)?, Integrability::HilbertSchmidt)
        }
        CaseId::Q5Oscillatory => {
            let (c1, c2) = (g("c1"), g("c2"));
            let kernel = Kernel::AiryOscillatory { ai: 1.5 * (c1 + c2), bi: 0.75f64.sqrt() * (c2 - c1) };
            probe = (0.05, 3.0);
            (kernel, CoefficientFamily::quadratic(0.0, 1.0, -1.0, 0.0, 0.0)?, Integrability::BoundedOnly)
        }
        CaseId::Q6Plus => (Kernel::BesselK1, CoefficientFamily::quadratic(1.0, 0.0, 0.0, 0.25, 0.0)?, Integrability::BoundedOnly),
        CaseId::Q6Minus => (Kernel::BesselJ1, CoefficientFamily::quadratic(1.0, 0.0, 0.0, -0.25, 0.0)?, Integrability::BoundedOnly),
        CaseId::Q7Plus => {
            let s = g("shift");
            if s < 0.0 {
                return Err(invalid("Q7_plus needs shift >= 0"));
            }
            let kernel = Kernel::ExpOverLinear { shift: s };
            let class = if s > 0.0 {
                decay = Some(exponential_decay(&kernel, 1.0, Some((-s).exp() / s)));
                Integrability::HilbertSchmidt
            } else {
                Integrability::BoundedOnly
            };
            (kernel, CoefficientFamily::quadratic(1.0, s, 1.0, s, 0.0)?, class)
        }
        CaseId::Q7Minus => {
            let s = g("shift");
            if s < 0.0 {
                return Err(invalid("Q7_minus needs shift >= 0"));
            }
            let kernel = Kernel::TrigOverLinear { shift: s, k1: g("kappa1"), k2: g("kappa2") };
            (kernel, CoefficientFamily::quadratic(1.0, s, -1.0, -s, 0.0)?, Integrability::BoundedOnly)
        }
        CaseId::Q8Laguerre => {
            let n = integer_param(g("n"), "n", 60)?;
            let kernel = Kernel::LaguerreExp { n };
            decay = Some(exponential_decay(&kernel, 0.5, None));
            let b1 = -2.0 * (n as f64 + 1.0);
            (kernel, CoefficientFamily::quadratic(1.0, 0.0, 1.0, b1, 0.0)?, Integrability::FiniteRank(n + 1))
        }
        CaseId::H1 => {
            let (h1, h4) = (g("h1"), g("h4"));
            if h1 == 0.0 || 1.0 + h4 / h1 < 0.0 {
                return Err(invalid("H1 needs h1 != 0 and 1 + h4/h1 >= 0"));
            }
            let p = 0.5 * (1.0 + (1.0 + h4 / h1).sqrt());
            domain = DomainKind::UnitIntervalMultiplicative;
            probe = (0.02, 3.0);
            (Kernel::Power { p }, h_family(h1, h1, h4, h4)?, Integrability::FiniteRank(1))
        }
        CaseId::H2Plus | CaseId::H2Minus | CaseId::H4Plus | CaseId::H4Minus => {
            let nu = g("nu");
            if nu < 0.0 {
                return Err(invalid("nu must be >= 0"));
            }
            domain = DomainKind::UnitIntervalMultiplicative;
            let (m, pl) = (5.0 - nu * nu, -3.0 - nu * nu);
            match id {
                CaseId::H2Plus => {
                    probe = (0.02, 3.0);
                    let class = if nu < 1.0 { Integrability::HilbertSchmidt } else { Integrability::BoundedOnly };
                    (Kernel::SqrtBesselK { nu }, h_family(-1.0, -1.0, m, pl)?, class)
                }
                CaseId::H2Minus => {
                    probe = (0.02, 3.0);
                    (Kernel::SqrtBesselJ { nu }, h_family(-1.0, -1.0, pl, m)?, Integrability::HilbertSchmidt)
                }
                // x -> 1/x mirror images: (h1, h4) -> (-h1, -h4)
                CaseId::H4Plus => {
                    probe = (0.02, 1.5);
                    (Kernel::InvSqrtBesselK { nu }, h_family(1.0, -1.0, -m, pl)?, Integrability::HilbertSchmidt)
                }
                _ => {
                    probe = (0.02, 1.5);
                    (Kernel::InvSqrtBesselJ { nu }, h_family(1.0, -1.0, -pl, m)?, Integrability::BoundedOnly)
                }
            }
        }
        CaseId::H3 => {
            let (h2, h5) = (g("h2"), g("h5"));
            if h2 == 0.0 || !(h5 / h2 > 0.0) {
                return Err(invalid("H3 needs h2 != 0 and h5/h2 > 0"));
            }
            let p = 0.5 * (-1.0 + (1.0 + h5 / h2).sqrt());
            domain = DomainKind::UnitIntervalMultiplicative;
            probe = (0.02, 3.0);
            (Kernel::Power { p }, h_family(-h2, h2, -h5, h5)?, Integrability::FiniteRank(1))
        }
        CaseId::H5 => {
            let mu = g("mu");
            let nu = 1.0 - mu;
            let h4 = -0.5 * mu * nu;
            domain = DomainKind::UnitIntervalMultiplicative;
            probe = (0.015, 2.0);
            (Kernel::Hypergeometric { mu, nu }, h_family(0.25, 0.0, h4, -h4)?, Integrability::BoundedOnly)
        }
        CaseId::H6 => {
            return Err(Error::UnsupportedCase(
                "H6 has no closed-form kernel; use classify for its Riemann scheme".into(),
            ))
        }
        CaseId::H7 => {
            let (h1, h2) = (g("h1"), g("h2"));
            if h1 == h2 {
                return Err(invalid("H7 needs h1 != h2"));
            }
            let (pp, m) = (h1 + h2, h2 - h1);
            if pp == 0.0 || pp * (pp + m) <= 0.0 {
                return Err(invalid("H7 needs h1 + h2 + (h2 - h1) x to keep one sign on [0, 1]"));
            }
            domain = DomainKind::UnitIntervalMultiplicative;
            probe = (0.02, 3.0);
            let kernel = Kernel::Rational { c1: g("c1"), c2: g("c2"), p: pp, m };
            (kernel, h_family(h1, h2, 0.0, 0.0)?, Integrability::BoundedOnly)
        }
        CaseId::CGeneral => {
            let t = g("t");
            if !(t > 0.0) {
                return Err(invalid("C_general needs t > 0"));
            }
            let (c7, c8) = (g("c7"), g("c8"));
            domain = DomainKind::Periodic;
            let per = 2.0 * PI / t;
            period = Some(per);
            probe = (0.05 * per, 0.45 * per);
            let class = if c8 == 0.0 { Integrability::FiniteRank(2) } else { Integrability::BoundedOnly };
            let fam = CoefficientFamily::circular(t, [-1.0, 0.0, 1.0, 0.75 * t * t, 0.0, 0.0])?;
            (Kernel::Periodic { t, c7, c8 }, fam, class)
        }
        CaseId::Hermite => {
            let n = integer_param(g("n"), "n", 60)?;
            let kernel = Kernel::Hermite { n };
            let truncation = 16.0 + 4.0 * (n as f64).sqrt();
            decay = Some(DecayInfo {
                epsilon: 1.0,
                delta: 0.5,
                strip: 1.0,
                bound: sampled_decay_bound(&kernel, 1.0, truncation),
                truncation,
            });
            probe = (0.0, 5.0);
            return Ok(KernelCase {
                case_id: id,
                params: full,
                family: None,
                domain,
                decay,
                integrability: Integrability::HilbertSchmidt,
                kernel,
                offset: 0.0,
                probe_range: probe,
                period,
            });
        }
    };
    family.check_admissible()?;
    Ok(KernelCase {
        case_id: id,
        params: full,
        family: Some(family),
        domain,
        decay,
        integrability,
        kernel,
        offset: 0.0,
        probe_range: probe,
        period,
    })
}

/// Builds a case with all defaults.
pub fn default_case(id: CaseId) -> Result<KernelCase> {
    build_case(id, &Params::new())
}

/// `phi''(u) + alpha(u) phi'(u) - beta(u) phi(u)` in the additive variable.
pub fn ode_residual(kc: &KernelCase, u: f64) -> Result<f64> {
    let fam = kc
        .family
        .as_ref()
        .ok_or_else(|| Error::UnsupportedCase(format!("{} has no coefficient pair", kc.case_id)))?;
    if fam.pole_distance(u) < POLE_TOLERANCE {
        return Err(Error::PoleProximity { at: u, tol: POLE_TOLERANCE });
    }
    let alpha = alpha_of(fam);
    let beta = beta_of(fam)?;
    let [f, f1, f2] = kc.additive(u);
    Ok(f2 + alpha(u) * f1 - beta(u) * f)
}
