//! Bessel functions of real order and non-negative real argument.
//!
//! `K_nu` comes from the integral `K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt`,
//! summed with the trapezoid rule. The integrand is analytic in a strip around
//! the real axis and decays doubly exponentially, so the rule converges
//! geometrically in `1/h` and the result keeps full relative precision for
//! every `x > 0`.
//!
//! `J_n` for integer order uses Bessel's integral over a full period, again a
//! geometrically convergent trapezoid sum. Non-integer orders use the
//! ascending series for moderate arguments and Hankel's expansion beyond.

use super::gamma::gamma_unchecked;
use super::EvalResult;
use crate::error::{invalid_arg, Result};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// Largest argument for which the ascending series is used for `J_nu`
/// of non-integer order.
const J_SERIES_LIMIT: f64 = 12.0;

/// `exp(x) K_nu(x)` for `x > 0`, with an absolute error estimate.
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<EvalResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(invalid_arg(format!("bessel_k requires x > 0, got {x}")));
    }
    if !nu.is_finite() {
        return Err(invalid_arg("bessel_k order must be finite"));
    }
    let nu = nu.abs();
    let h = (0.5 / x.sqrt()).min(0.1);
    // integrand exp(-x (cosh t - 1)) cosh(nu t), with cosh t - 1 = 2 sinh^2(t/2)
    let f = |t: f64| {
        let s = (0.5 * t).sinh();
        (-2.0 * x * s * s).exp() * (nu * t).cosh()
    };
    let mut sum = 0.5 * f(0.0);
    let mut abs_sum = sum.abs();
    let mut prev = sum;
    let mut k = 1usize;
    loop {
        let t = k as f64 * h;
        let term = f(t);
        sum += term;
        abs_sum += term.abs();
        if t > 1.0 && term <= prev && term <= 1e-18 * sum {
            break;
        }
        if k > 200_000 {
            break;
        }
        prev = term;
        k += 1;
    }
    let value = h * sum;
    Ok(EvalResult::new(value, 8.0 * f64::EPSILON * h * abs_sum))
}

/// Modified Bessel function of the second kind `K_nu(x)`, `x > 0`.
pub fn bessel_k(nu: f64, x: f64) -> Result<EvalResult> {
    let scaled = bessel_k_scaled(nu, x)?;
    if x > 700.0 {
        // exp(-x) underflows; report zero with the smallest representable bound
        let e = (-x).exp();
        if e == 0.0 {
            return Ok(EvalResult::new(0.0, f64::MIN_POSITIVE));
        }
    }
    let e = (-x).exp();
    Ok(EvalResult::new(scaled.value * e, scaled.est_abs_error * e))
}

/// Derivative `K_nu'(x) = (nu / x) K_nu(x) - K_{nu+1}(x)`.
pub fn bessel_k_prime(nu: f64, x: f64) -> Result<EvalResult> {
    let k0 = bessel_k(nu, x)?;
    let k1 = bessel_k(nu.abs() + 1.0, x)?;
    let value = nu.abs() / x * k0.value - k1.value;
    Ok(EvalResult::new(value, nu.abs() / x * k0.est_abs_error + k1.est_abs_error))
}

fn is_integer(nu: f64) -> bool {
    nu == nu.round() && nu.abs() < 1e6
}

/// Bessel function of the first kind `J_nu(x)` for `nu >= 0`, `x >= 0`.
pub fn bessel_j(nu: f64, x: f64) -> Result<EvalResult> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(invalid_arg(format!("bessel_j requires nu >= 0, got {nu}")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(invalid_arg(format!("bessel_j requires x >= 0, got {x}")));
    }
    Ok(bessel_j_unchecked(nu, x))
}

/// `J_nu(x)` for any real order (`nu > -1` or integer) and `x >= 0`.
pub(crate) fn bessel_j_unchecked(nu: f64, x: f64) -> EvalResult {
    if x == 0.0 {
        let v = if nu == 0.0 { 1.0 } else { 0.0 };
        return EvalResult::new(v, 0.0);
    }
    if is_integer(nu) {
        bessel_j_integer(nu as i64, x)
    } else if x <= J_SERIES_LIMIT.max(2.0 * nu) {
        bessel_j_series(nu, x)
    } else {
        bessel_j_hankel(nu, x)
    }
}

/// Derivative `J_nu'(x) = (nu / x) J_nu(x) - J_{nu+1}(x)`.
pub fn bessel_j_prime(nu: f64, x: f64) -> Result<EvalResult> {
    if !(nu >= 0.0) || !(x >= 0.0) {
        return Err(invalid_arg("bessel_j_prime requires nu >= 0 and x >= 0"));
    }
    if x == 0.0 {
        let v = if nu == 1.0 {
            0.5
        } else if nu == 0.0 || nu > 1.0 {
            0.0
        } else {
            f64::INFINITY
        };
        return Ok(EvalResult::new(v, 0.0));
    }
    let j0 = bessel_j_unchecked(nu, x);
    let j1 = bessel_j_unchecked(nu + 1.0, x);
    Ok(EvalResult::new(
        nu / x * j0.value - j1.value,
        nu / x * j0.est_abs_error + j1.est_abs_error,
    ))
}

fn bessel_j_integer(n: i64, x: f64) -> EvalResult {
    // J_{-n} = (-1)^n J_n
    let sign = if n < 0 && n % 2 != 0 { -1.0 } else { 1.0 };
    let n = n.unsigned_abs() as f64;
    let points = ((1.5 * x + 2.0 * n + 64.0).ceil() as usize).next_multiple_of(2);
    let h = 2.0 * PI / points as f64;
    let mut sum = 0.0;
    for k in 0..points {
        let tau = k as f64 * h;
        sum += (n * tau - x * tau.sin()).cos();
    }
    let value = sum / points as f64;
    EvalResult::new(sign * value, 4.0 * f64::EPSILON * (1.0 + (points as f64).sqrt()))
}

fn bessel_j_series(nu: f64, x: f64) -> EvalResult {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = half.powf(nu) / gamma_unchecked(nu + 1.0);
    let mut sum = term;
    let mut abs_sum = term.abs();
    let mut k = 1.0;
    loop {
        term *= -q / (k * (k + nu));
        sum += term;
        abs_sum += term.abs();
        if term.abs() <= 1e-17 * abs_sum || k > 500.0 {
            break;
        }
        k += 1.0;
    }
    EvalResult::new(sum, 4.0 * f64::EPSILON * abs_sum + term.abs())
}

fn bessel_j_hankel(nu: f64, x: f64) -> EvalResult {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    let mut err = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        a *= (mu - odd * odd) / (kf * 8.0 * x);
        if a.abs() >= last {
            err = last;
            break;
        }
        if a == 0.0 {
            err = 0.0;
            break;
        }
        // a_k / x^k with alternating signs on the even and odd sub-series
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
        last = a.abs();
        err = last;
    }
    let omega = x - nu * FRAC_PI_2 - FRAC_PI_4;
    let scale = (2.0 / (PI * x)).sqrt();
    EvalResult::new(
        scale * (p * omega.cos() - q * omega.sin()),
        scale * (err + 4.0 * f64::EPSILON),
    )
}
