use super::EvalResult;
use crate::error::{invalid_arg, Result};
use std::f64::consts::PI;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(z: f64) -> f64 {
    // z = x - 1
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    acc
}

/// Gamma function for `0 < x <= 170`.
pub fn gamma_fn(x: f64) -> Result<EvalResult> {
    if !(x > 0.0) || x > 171.0 || !x.is_finite() {
        return Err(invalid_arg(format!("gamma_fn requires 0 < x <= 170, got {x}")));
    }
    let value = gamma_unchecked(x);
    Ok(EvalResult::new(value, 4e-15 * value.abs() * (1.0 + x.ln().abs())))
}

pub(crate) fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_unchecked(1.0 - x));
    }
    if x == x.floor() && x <= 23.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return f;
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // split the power so Gamma(170) does not overflow in the intermediate
    let half = t.powf((z + 0.5) / 2.0);
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(z)
}

/// Natural log of Gamma for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(gamma_fn(1.0).unwrap().value, 1.0);
        assert_eq!(gamma_fn(5.0).unwrap().value, 24.0);
        let half = gamma_fn(0.5).unwrap().value;
        assert!((half - PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-1.5).is_err());
    }

    #[test]
    fn duplication_formula() {
        // Gamma(z) Gamma(z + 1/2) = 2^(1 - 2z) sqrt(pi) Gamma(2z)
        for &z in &[0.3, 1.7, 4.25, 11.1, 40.3, 80.2] {
            let lhs = gamma_unchecked(z) * gamma_unchecked(z + 0.5);
            let rhs = 2f64.powf(1.0 - 2.0 * z) * PI.sqrt() * gamma_unchecked(2.0 * z);
            assert!(((lhs - rhs) / rhs).abs() < 1e-12, "z = {z}");
        }
    }

    #[test]
    fn recurrence_and_large_argument() {
        for &x in &[0.01, 0.9, 2.5, 33.3, 120.7, 169.0] {
            let a = gamma_unchecked(x + 1.0);
            let b = x * gamma_unchecked(x);
            assert!(((a - b) / a).abs() < 1e-12, "x = {x}");
        }
        // 170! is finite
        assert!(gamma_fn(170.0).unwrap().value.is_finite());
        let lg = ln_gamma(100.0);
        assert!((lg - gamma_unchecked(100.0).ln()).abs() < 1e-10);
    }
}
