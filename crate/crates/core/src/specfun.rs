//! Exponential integral and harmonic numbers.
//!
//! `E1(x) = ∫₁^∞ e^{-xy}/y dy` is evaluated with its power series for
//! `x <= 1` and with a modified-Lentz continued fraction for `x > 1`. The
//! ergodic-capacity expressions mostly need the product `e^x E1(x)`, which
//! stays O(1/x) where `E1` itself underflows, so that product is exposed
//! separately as [`exp_scaled_e1`].

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Euler–Mascheroni constant, 20 decimal digits.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

const MAX_ITERATIONS: usize = 10_000;

fn check_argument<T: Real>(op: &'static str, x: T) -> Result<()> {
    if x.is_nan() || x.is_infinite() || x <= T::zero() {
        return Err(Error::domain(op, format!("expected finite x > 0, got {x}")));
    }
    Ok(())
}

/// `E1(x)` for `x <= 1` via `-γ - ln x + Σ (-1)^{k+1} x^k / (k·k!)`.
fn e1_series<T: Real>(x: T) -> T {
    let eps = T::epsilon();
    let mut term = T::one();
    let mut sum = T::zero();
    for k in 1..MAX_ITERATIONS {
        let k = T::from_count(k);
        term = term * (-x) / k;
        let contribution = term / k;
        sum = sum - contribution;
        if contribution.abs() < eps * sum.abs().max(eps) {
            break;
        }
    }
    -T::lit(EULER_GAMMA) - x.ln() + sum
}

/// `e^x E1(x)` for `x > 1` via the continued fraction
/// `1/(x+1- 1/(x+3- 4/(x+5- ...)))`, evaluated with modified Lentz.
fn scaled_e1_fraction<T: Real>(x: T) -> T {
    let eps = T::epsilon();
    let tiny = T::min_positive_value() / eps;
    let two = T::two();
    let mut b = x + T::one();
    let mut c = T::one() / tiny;
    let mut d = T::one() / b;
    let mut h = d;
    for i in 1..MAX_ITERATIONS {
        let i = T::from_count(i);
        let a = -(i * i);
        b = b + two;
        d = T::one() / (a * d + b);
        c = b + a / c;
        let delta = c * d;
        h = h * delta;
        if (delta - T::one()).abs() <= eps {
            break;
        }
    }
    h
}

/// Exponential integral `E1(x)` for finite `x > 0`.
///
/// Returns zero once `E1(x)` underflows (beyond `x ≈ 740` in `f64`).
pub fn exp_integral_e1<T: Real>(x: T) -> Result<T> {
    check_argument("exp_integral_e1", x)?;
    if x <= T::one() {
        Ok(e1_series(x))
    } else {
        Ok(scaled_e1_fraction(x) * (-x).exp())
    }
}

/// `e^x · E1(x)` for finite `x > 0`, without intermediate overflow.
pub fn exp_scaled_e1<T: Real>(x: T) -> Result<T> {
    check_argument("exp_scaled_e1", x)?;
    if x <= T::one() {
        Ok(x.exp() * e1_series(x))
    } else {
        Ok(scaled_e1_fraction(x))
    }
}

/// Harmonic number `H_n = Σ_{i=1..n} 1/i`.
///
/// Terms are added from the smallest (`1/n`) to the largest with Neumaier
/// compensation, so the result is within about one ulp of the exact value.
pub fn harmonic<T: Real>(n: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::domain("harmonic", "n must be at least 1"));
    }
    let mut sum = T::zero();
    let mut compensation = T::zero();
    for i in (1..=n).rev() {
        let term = T::one() / T::from_count(i);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            compensation = compensation + ((sum - t) + term);
        } else {
            compensation = compensation + ((term - t) + sum);
        }
        sum = t;
    }
    Ok(sum + compensation)
}
