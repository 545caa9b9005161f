//! Quadrature rules and the integration domains of the three Hankel variants.

use crate::error::{invalid_arg, Result};
use serde::Serialize;
use std::f64::consts::PI;

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

/// Integration domain carried by a [`Grid`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Domain {
    /// `(floor, truncation)` standing in for `(0, inf)`; `truncation` may be infinite.
    HalfLine { truncation: f64, floor: f64 },
    /// `(floor, 1)` with the measure `dx / x`.
    UnitIntervalMultiplicative { floor: f64 },
    /// One period `[0, period)`.
    Periodic { period: f64 },
    /// A plain bounded interval.
    Interval { a: f64, b: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DomainKind {
    HalfLine,
    UnitIntervalMultiplicative,
    Periodic,
}

impl Domain {
    /// The Hankel variant this domain discretizes. Plain intervals inside
    /// `[0, inf)` serve as truncated half-lines.
    pub fn kind(&self) -> Option<DomainKind> {
        match *self {
            Domain::HalfLine { .. } => Some(DomainKind::HalfLine),
            Domain::UnitIntervalMultiplicative { .. } => Some(DomainKind::UnitIntervalMultiplicative),
            Domain::Periodic { .. } => Some(DomainKind::Periodic),
            Domain::Interval { a, .. } if a >= 0.0 => Some(DomainKind::HalfLine),
            Domain::Interval { .. } => None,
        }
    }
}

/// Quadrature nodes and positive weights on a domain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub domain: Domain,
}

impl Grid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_i w_i f(x_i)`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Discrete `L^2` norm `sqrt(sum_i w_i v_i^2)` of samples `v`.
    pub fn norm(&self, v: &[f64]) -> f64 {
        v.iter().zip(&self.weights).map(|(x, w)| w * x * x).sum::<f64>().sqrt()
    }
}

/// Gauss-Legendre rule with `n` points on `[a, b]`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<Grid> {
    if n == 0 || n > 10_000 {
        return Err(invalid_arg(format!("gauss_legendre needs 1 <= n <= 10000, got {n}")));
    }
    if !(b > a) || !a.is_finite() || !b.is_finite() {
        return Err(invalid_arg(format!("gauss_legendre needs finite a < b, got [{a}, {b}]")));
    }
    let (x, w) = legendre_reference(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    Ok(Grid {
        nodes: x.iter().map(|t| mid + half * t).collect(),
        weights: w.iter().map(|wi| half * wi).collect(),
        domain: Domain::Interval { a, b },
    })
}

/// Gauss-Legendre rule on `[0, truncation]`, tagged as a truncated half-line.
pub fn half_line_legendre(n: usize, truncation: f64) -> Result<Grid> {
    let mut g = gauss_legendre(n, 0.0, truncation)?;
    g.domain = Domain::HalfLine { truncation, floor: 0.0 };
    Ok(g)
}

/// Reference nodes (ascending) and weights on `[-1, 1]`.
pub(crate) fn legendre_reference(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..NEWTON_MAX_ITER {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 0..n {
                let jf = j as f64;
                let p3 = p2;
                p2 = p1;
                p1 = ((2.0 * jf + 1.0) * z * p2 - jf * p3) / (jf + 1.0);
            }
            dp = nf * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() <= NEWTON_TOL {
                break;
            }
        }
        if n % 2 == 1 && i == m - 1 {
            z = 0.0;
            // recompute the derivative at the exact centre
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 0..n {
                let jf = j as f64;
                let p3 = p2;
                p2 = p1;
                p1 = ((2.0 * jf + 1.0) * z * p2 - jf * p3) / (jf + 1.0);
            }
            dp = nf * (z * p1 - p2) / (z * z - 1.0);
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(L_n(y), L_{n-1}(y), log_scale)` with the true values equal to the
/// returned ones times `exp(log_scale)`.
fn laguerre_scaled(n: usize, y: f64) -> (f64, f64, f64) {
    let (mut p1, mut p2) = (1.0, 0.0);
    let mut log_scale = 0.0;
    for j in 0..n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        p1 = ((2.0 * jf + 1.0 - y) * p2 - jf * p3) / (jf + 1.0);
        if p1.abs() > 1e150 {
            p1 *= 1e-150;
            p2 *= 1e-150;
            log_scale += 150.0 * std::f64::consts::LN_10;
        }
    }
    (p1, p2, log_scale)
}

/// Gauss-Laguerre rule for `int_0^inf f(x) dx` with exponential rate `rate`:
/// the weights absorb `exp(rate x)`, so the grid integrates `f` directly and is
/// exact for `f(x) = p(x) exp(-rate x)` with `deg p <= 2n - 1`.
pub fn gauss_laguerre(n: usize, rate: f64) -> Result<Grid> {
    if n == 0 || n > 256 {
        return Err(invalid_arg(format!("gauss_laguerre needs 1 <= n <= 256, got {n}")));
    }
    if !(rate > 0.0) || !rate.is_finite() {
        return Err(invalid_arg(format!("gauss_laguerre needs rate > 0, got {rate}")));
    }
    let nf = n as f64;
    let mut roots: Vec<f64> = Vec::with_capacity(n);
    let mut log_w: Vec<f64> = Vec::with_capacity(n);
    let mut z = 0.0;
    for i in 0..n {
        if i == 0 {
            z = 3.0 / (1.0 + 2.4 * nf);
        } else if i == 1 {
            z += 15.0 / (1.0 + 2.5 * nf);
        } else {
            let ai = (i - 1) as f64;
            z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - roots[i - 2]);
        }
        for _ in 0..NEWTON_MAX_ITER {
            let (p1, p2, _) = laguerre_scaled(n, z);
            let dz = p1 / (nf * (p1 - p2) / z);
            z -= dz;
            if dz.abs() <= NEWTON_TOL * z.max(1.0) {
                break;
            }
        }
        let (_, p2, s) = laguerre_scaled(n, z);
        roots.push(z);
        log_w.push(z.ln() - 2.0 * nf.ln() - 2.0 * (p2.abs().ln() + s));
    }
    let nodes = roots.iter().map(|y| y / rate).collect();
    let weights = roots
        .iter()
        .zip(&log_w)
        .map(|(y, lw)| (lw + y).exp() / rate)
        .collect();
    Ok(Grid {
        nodes,
        weights,
        domain: Domain::HalfLine { truncation: f64::INFINITY, floor: 0.0 },
    })
}

/// Log-equispaced nodes on `[x_min, x_max]` with trapezoid weights in `ln x`.
pub fn geometric_grid(n: usize, x_min: f64, x_max: f64) -> Result<Grid> {
    if n < 2 {
        return Err(invalid_arg(format!("geometric_grid needs n >= 2, got {n}")));
    }
    if !(x_min > 0.0) || !(x_max > x_min) || !x_max.is_finite() {
        return Err(invalid_arg(format!(
            "geometric_grid needs 0 < x_min < x_max, got [{x_min}, {x_max}]"
        )));
    }
    let lo = x_min.ln();
    let h = (x_max.ln() - lo) / (n - 1) as f64;
    let mut nodes: Vec<f64> = (0..n).map(|k| (lo + h * k as f64).exp()).collect();
    nodes[0] = x_min;
    nodes[n - 1] = x_max;
    let weights = nodes
        .iter()
        .enumerate()
        .map(|(k, x)| if k == 0 || k == n - 1 { 0.5 * h * x } else { h * x })
        .collect();
    Ok(Grid { nodes, weights, domain: Domain::HalfLine { truncation: x_max, floor: x_min } })
}

/// Equispaced trapezoid rule on one period.
pub fn periodic_grid(n: usize, period: f64) -> Result<Grid> {
    if n < 2 {
        return Err(invalid_arg(format!("periodic_grid needs n >= 2, got {n}")));
    }
    if !(period > 0.0) || !period.is_finite() {
        return Err(invalid_arg(format!("periodic_grid needs period > 0, got {period}")));
    }
    let h = period / n as f64;
    Ok(Grid {
        nodes: (0..n).map(|k| h * k as f64).collect(),
        weights: vec![h; n],
        domain: Domain::Periodic { period },
    })
}

/// Nodes `k T / n`, `k = 0..n-1`, with trapezoid weights; the right end point
/// `T` is treated as a homogeneous Dirichlet point and carries no node.
pub fn uniform_grid(n: usize, truncation: f64) -> Result<Grid> {
    if n < 2 {
        return Err(invalid_arg(format!("uniform_grid needs n >= 2, got {n}")));
    }
    if !(truncation > 0.0) || !truncation.is_finite() {
        return Err(invalid_arg(format!("uniform_grid needs T > 0, got {truncation}")));
    }
    let h = truncation / n as f64;
    let mut weights = vec![h; n];
    weights[0] = 0.5 * h;
    Ok(Grid {
        nodes: (0..n).map(|k| h * k as f64).collect(),
        weights,
        domain: Domain::HalfLine { truncation, floor: 0.0 },
    })
}

/// Gauss-Legendre in `v = -ln y` on `(floor, 1)`; the weights are for `dy / y`.
pub fn multiplicative_grid(n: usize, floor: f64) -> Result<Grid> {
    if !(floor > 0.0 && floor < 1.0) {
        return Err(invalid_arg(format!("multiplicative_grid needs 0 < floor < 1, got {floor}")));
    }
    let g = gauss_legendre(n, 0.0, -floor.ln())?;
    let mut pairs: Vec<(f64, f64)> = g.nodes.iter().zip(&g.weights).map(|(v, w)| ((-v).exp(), *w)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(Grid {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        domain: Domain::UnitIntervalMultiplicative { floor },
    })
}

/// Composite Gauss-Legendre over `[a, b]` split into `panels` equal pieces.
pub(crate) fn composite_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let (x, w) = legendre_reference(order);
    let width = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + width * p as f64;
        let mid = lo + 0.5 * width;
        let mut s = 0.0;
        for (t, wt) in x.iter().zip(&w) {
            s += wt * f(mid + 0.5 * width * t);
        }
        total += 0.5 * width * s;
    }
    total
}

/// `int_0^cutoff f(t) dt` on geometrically graded panels `[0, s], [s, 2s], [2s, 4s], ...`
/// with `s = scale`; resolves integrands with a singularity at distance
/// `~scale` to the left of the origin.
pub(crate) fn graded_half_line(f: impl Fn(f64) -> f64, scale: f64, cutoff: f64, order: usize) -> f64 {
    let (x, w) = legendre_reference(order);
    let mut lo = 0.0;
    let mut hi = scale.min(cutoff);
    let mut total = 0.0;
    loop {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut s = 0.0;
        for (t, wt) in x.iter().zip(&w) {
            s += wt * f(mid + half * t);
        }
        total += half * s;
        if hi >= cutoff {
            break;
        }
        lo = hi;
        // grow geometrically, but cap the panel width so smooth tails stay resolved
        hi = (2.0 * hi).min(hi + 2.0).min(cutoff);
    }
    total
}
