use super::EvalResult;
use crate::error::{invalid_arg, Result};

/// Generalized Laguerre polynomial `L_n^{(alpha)}(x)` by the three-term recurrence.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> Result<EvalResult> {
    if !(alpha > -1.0) {
        return Err(invalid_arg(format!("laguerre requires alpha > -1, got {alpha}")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(invalid_arg(format!("laguerre requires x >= 0, got {x}")));
    }
    let (value, _, scale) = laguerre_pair(n, alpha, x);
    Ok(EvalResult::new(value, 4.0 * (n as f64 + 1.0) * f64::EPSILON * scale))
}

/// Returns `(L_n, L_{n-1}, max_k |L_k|)`; `L_{-1}` is reported as 0.
pub(crate) fn laguerre_pair(n: usize, alpha: f64, x: f64) -> (f64, f64, f64) {
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut scale: f64 = 1.0;
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        scale = scale.max(cur.abs());
    }
    (cur, prev, scale)
}

/// Values `L_0^{(alpha)}(x), ..., L_{n-1}^{(alpha)}(x)`.
pub(crate) fn laguerre_all(n: usize, alpha: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        out.push(cur);
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    out
}

/// Derivative `d/dx L_n^{(alpha)}(x) = -L_{n-1}^{(alpha+1)}(x)`.
pub(crate) fn laguerre_derivative(n: usize, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        -laguerre_pair(n - 1, alpha + 1.0, x).0
    }
}

/// Hermite function `He_n(x) exp(-x^2/4)`, where `He_n` is orthogonal with
/// respect to `exp(-x^2/2)` (leading coefficient 1).
pub fn hermite_fn(n: usize, x: f64) -> Result<EvalResult> {
    if n > 200 {
        return Err(invalid_arg(format!("hermite_fn supports n <= 200, got {n}")));
    }
    if !x.is_finite() {
        return Err(invalid_arg("hermite_fn requires finite x"));
    }
    let (value, _) = hermite_pair(n, x);
    Ok(EvalResult::new(value, 8.0 * (n as f64 + 1.0) * f64::EPSILON * value.abs().max(f64::MIN_POSITIVE)))
}

/// `(phi_n(x), phi_{n-1}(x))` with `phi_k = He_k exp(-x^2/4)`, computed through
/// the normalized recurrence so that neither factor overflows.
pub(crate) fn hermite_pair(n: usize, x: f64) -> (f64, f64) {
    // psi_k = He_k exp(-x^2/4) / sqrt(k!)
    let mut prev = 0.0;
    let mut cur = (-0.25 * x * x).exp();
    let mut log_fact = 0.0;
    let mut log_fact_prev = 0.0;
    for k in 0..n {
        let kf = k as f64;
        let next = (x * cur - kf.sqrt() * prev) / (kf + 1.0).sqrt();
        prev = cur;
        cur = next;
        log_fact_prev = log_fact;
        log_fact += (kf + 1.0).ln();
    }
    let value = cur * (0.5 * log_fact).exp();
    let previous = if n == 0 { 0.0 } else { prev * (0.5 * log_fact_prev).exp() };
    (value, previous)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Explicit sum L_n^{(a)}(x) = sum_k (-1)^k C(n+a, n-k) x^k / k!, the
    /// coefficient form of the Rodrigues formula.
    fn laguerre_explicit(n: usize, alpha: f64, x: f64) -> f64 {
        let mut total = 0.0;
        for k in 0..=n {
            // binomial (n + alpha choose n - k)
            let mut binom = 1.0;
            for i in 0..(n - k) {
                binom *= (alpha + k as f64 + 1.0 + i as f64) / (i as f64 + 1.0);
            }
            let mut xk = 1.0;
            for i in 1..=k {
                xk *= x / i as f64;
            }
            total += if k % 2 == 0 { binom * xk } else { -binom * xk };
        }
        total
    }

    #[test]
    fn low_degree_cases() {
        for &(a, x) in &[(0.0, 0.0), (1.5, 3.0), (-0.5, 10.0)] {
            assert_eq!(laguerre(0, a, x).unwrap().value, 1.0);
        }
        for &x in &[0.0, 0.5, 2.0, 7.0] {
            assert!((laguerre(1, 1.0, x).unwrap().value - (2.0 - x)).abs() < 1e-15);
        }
    }

    #[test]
    fn matches_rodrigues_coefficients() {
        let v = laguerre(6, 0.0, 2.5).unwrap().value;
        assert!((v - laguerre_explicit(6, 0.0, 2.5)).abs() < 1e-10);
        for n in 0..12 {
            for &a in &[0.0, 1.0, 2.5] {
                let v = laguerre(n, a, 1.3).unwrap().value;
                assert!((v - laguerre_explicit(n, a, 1.3)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn laguerre_rejects_bad_input() {
        assert!(laguerre(2, -1.0, 1.0).is_err());
        assert!(laguerre(2, 0.0, -1.0).is_err());
    }

    #[test]
    fn derivative_identity() {
        let h = 1e-5;
        for n in 1..8 {
            let x = 1.1;
            let fd = (laguerre_pair(n, 1.0, x + h).0 - laguerre_pair(n, 1.0, x - h).0) / (2.0 * h);
            assert!((fd - laguerre_derivative(n, 1.0, x)).abs() < 1e-7);
        }
    }

    #[test]
    fn hermite_basics() {
        assert_eq!(hermite_fn(0, 0.0).unwrap().value, 1.0);
        let a = hermite_fn(5, 1.3).unwrap().value;
        let b = hermite_fn(5, -1.3).unwrap().value;
        assert!((a + b).abs() < 1e-14);
        // He_2 = x^2 - 1
        let x: f64 = 0.7;
        let v = hermite_fn(2, x).unwrap().value;
        assert!((v - (x * x - 1.0) * (-x * x / 4.0).exp()).abs() < 1e-15);
        assert!(hermite_fn(201, 0.0).is_err());
        assert!(hermite_fn(200, 30.0).unwrap().value.is_finite());
    }
}
