use super::EvalResult;
use crate::error::{invalid_arg, Result};

const SERIES_RADIUS: f64 = 0.95;

/// Gauss hypergeometric series `F(mu, nu; lambda; x)` for `|x| <= 0.95`.
pub fn gauss_2f1(mu: f64, nu: f64, lambda: f64, x: f64) -> Result<EvalResult> {
    if lambda <= 0.0 && lambda == lambda.round() {
        return Err(invalid_arg(format!(
            "hypergeometric series undefined for lambda = {lambda} (non-positive integer)"
        )));
    }
    if !(x.abs() <= SERIES_RADIUS) {
        return Err(invalid_arg(format!("gauss_2f1 series needs |x| <= {SERIES_RADIUS}, got {x}")));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut abs_sum = 1.0;
    let mut k = 0.0;
    let mut tail = 0.0;
    while k < 20_000.0 {
        let ratio = (mu + k) * (nu + k) / ((lambda + k) * (k + 1.0)) * x;
        term *= ratio;
        sum += term;
        abs_sum += term.abs();
        k += 1.0;
        if term == 0.0 {
            break;
        }
        // once the ratio has settled below 1 the tail is bounded geometrically
        let next_ratio = ((mu + k) * (nu + k) / ((lambda + k) * (k + 1.0)) * x).abs();
        if next_ratio < 1.0 && k > (mu.abs() + nu.abs() + lambda.abs()) {
            tail = term.abs() * next_ratio / (1.0 - next_ratio);
            if tail < 1e-17 * abs_sum {
                break;
            }
        }
    }
    Ok(EvalResult::new(sum, tail + 4.0 * f64::EPSILON * abs_sum))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_and_log_closed_form() {
        assert_eq!(gauss_2f1(0.3, -1.2, 2.5, 0.0).unwrap().value, 1.0);
        let v = gauss_2f1(1.0, 1.0, 2.0, 0.5).unwrap();
        let exact = -(0.5f64.ln()) / 0.5;
        assert!((v.value - exact).abs() < 1e-14);
        assert!((exact - 1.386_294_361).abs() < 1e-9);
        assert!((v.value - exact).abs() <= v.est_abs_error + 1e-15);
    }

    #[test]
    fn rejects_bad_lambda_and_radius() {
        assert!(gauss_2f1(1.0, 1.0, 0.0, 0.2).is_err());
        assert!(gauss_2f1(1.0, 1.0, -3.0, 0.2).is_err());
        assert!(gauss_2f1(1.0, 1.0, 2.0, 0.99).is_err());
    }

    #[test]
    fn near_radius_matches_closed_form() {
        // F(1,1;2;x) = -ln(1-x)/x
        let x = 0.95;
        let v = gauss_2f1(1.0, 1.0, 2.0, x).unwrap();
        let exact = -(1.0 - x).ln() / x;
        assert!((v.value - exact).abs() < 1e-12, "{} vs {exact}", v.value);
        // F(a, b; b; x) = (1 - x)^{-a}
        let v = gauss_2f1(0.7, 2.0, 2.0, -0.9).unwrap();
        assert!((v.value - 1.9f64.powf(-0.7)).abs() < 1e-13);
    }
}
