use super::bounds::{best_of_n_capacity, c_min};
use super::{check_delta, energy_to_delta, require_two, scaled_e1, single_outage};
use crate::error::{Error, Result};
use crate::model::SystemConfig;
use crate::scalar::Real;

/// Below this distance from 1 the ratio `w = γ̄/(2νε̄)` is treated with a
/// second-order expansion around the removable singularity at `w = 1`.
const SINGULAR_BAND: f64 = 1e-5;

fn check_nu<T: Real>(op: &'static str, nu: T) -> Result<T> {
    if nu.is_nan() || nu < T::zero() {
        Err(Error::domain(op, format!("nu must be >= 0, got {nu}")))
    } else {
        Ok(nu)
    }
}

/// `w = γ̄/(2νε̄)`; `+∞` at `ν = 0` and 0 at `ν = +∞`.
fn ratio<T: Real>(config: &SystemConfig<T>, nu: T) -> T {
    config.mean_snr() / (T::two() * nu * config.mean_energy())
}

/// `w` as a function of the tradeoff factor, `√(1-δ)(1 + √(1-δ))/δ`.
fn ratio_of_delta<T: Real>(delta: T) -> T {
    let r = (T::one() - delta).sqrt();
    r * (T::one() + r) / delta
}

/// Evaluates `M(w)/(w² - 1)` for `M(1) = 0`. `numerator` is `M(w)` and
/// `scaled_numerator` is `M(w)/w²`; close to `w = 1` the quotient is replaced
/// by `[M'(1) + M''(1)(w-1)/2]/(w + 1)`.
fn removable_quotient<T: Real>(w: T, numerator: T, scaled_numerator: T, first: T, second: T) -> T {
    let h = w - T::one();
    if h.abs() < T::lit(SINGULAR_BAND) {
        (first + second * h * T::half()) / (w + T::one())
    } else if w > T::one() {
        scaled_numerator / (T::one() - (w * w).recip())
    } else {
        numerator / (w * w - T::one())
    }
}

/// Average energy of weighted-difference selection,
/// `(ε̄/2)[3 - γ̄²/(γ̄ + 2νε̄)²]`; `ν = +∞` gives `1.5ε̄`.
pub fn energy_wd_of_nu<T: Real>(config: &SystemConfig<T>, nu: T) -> Result<T> {
    require_two("energy_wd_of_nu", config)?;
    let nu = check_nu("energy_wd_of_nu", nu)?;
    let snr = config.mean_snr();
    let mean = config.mean_energy();
    let share = snr / (snr + T::two() * nu * mean);
    Ok(mean * T::half() * (T::lit(3.0) - share * share))
}

/// Weight `ν = (γ̄/2ε̄)(√(ε̄/(3ε̄ - 2ε)) - 1)` that yields average energy
/// `energy`; `+∞` at `ε = 1.5ε̄`.
pub fn nu_from_energy<T: Real>(config: &SystemConfig<T>, energy: T) -> Result<T> {
    require_two("nu_from_energy", config)?;
    let delta = energy_to_delta("nu_from_energy", config, energy)?;
    // √(ε̄/(3ε̄ - 2ε)) = 1/√(1 - δ).
    let stretch = (T::one() - delta).sqrt().recip();
    Ok(config.mean_snr() / (T::two() * config.mean_energy()) * (stretch - T::one()))
}

/// Ergodic capacity of weighted-difference selection with weight `nu`.
///
/// With `b = 2/γ̄`, `s(x) = e^x E1(x)` and `w = γ̄/(2νε̄)`:
/// `C = s(b)/ln 2 + [s(b(1+w)) - w² s(2b)] / (2 ln 2 (w² - 1))`.
pub fn c_wd_of_nu<T: Real>(config: &SystemConfig<T>, nu: T) -> Result<T> {
    require_two("c_wd_of_nu", config)?;
    let nu = check_nu("c_wd_of_nu", nu)?;
    if nu == T::zero() {
        return best_of_n_capacity(config.mean_snr(), 2);
    }
    if nu.is_infinite() {
        return c_min(config);
    }
    let ln2 = T::LN_2();
    let b = T::two() / config.mean_snr();
    let w = ratio(config, nu);
    let s_b = scaled_e1(b)?;
    let s_2b = scaled_e1(T::two() * b)?;
    // Derivatives of s: s' = s - 1/x, s'' = s - 1/x + 1/x².
    let x = T::two() * b;
    let ds = s_2b - x.recip();
    let d2s = ds + (x * x).recip();
    let first = b * ds - T::two() * s_2b;
    let second = b * b * d2s - T::two() * s_2b;
    let shifted = scaled_e1(b * (T::one() + w))?;
    let tail = removable_quotient(
        w,
        shifted - w * w * s_2b,
        shifted / (w * w) - s_2b,
        first,
        second,
    );
    Ok(s_b / ln2 + tail / (T::two() * ln2))
}

/// Ergodic capacity of weighted-difference selection at average energy
/// `energy`.
pub fn c_wd<T: Real>(config: &SystemConfig<T>, energy: T) -> Result<T> {
    c_wd_of_nu(config, nu_from_energy(config, energy)?)
}

/// Outage probability for a given ratio `w`:
/// `[w²q² - 2q - (e^{-2g(1+w)} - 1)] / (w² - 1)` with `g = γ_th/γ̄`.
fn outage_wd_of_ratio<T: Real>(config: &SystemConfig<T>, w: T) -> T {
    let q = single_outage(config);
    if w.is_infinite() {
        return q * q;
    }
    let g2 = T::two() * config.outage_threshold() / config.mean_snr();
    let p = T::one() - q;
    let tail = (-g2 * (T::one() + w)).exp_m1();
    let decay = p * (-g2).exp();
    let first = T::two() * q * q + g2 * decay;
    let second = T::two() * q * q - g2 * g2 * decay;
    removable_quotient(
        w,
        w * w * q * q - T::two() * q - tail,
        q * q - (T::two() * q + tail) / (w * w),
        first,
        second,
    )
}

/// Outage probability of weighted-difference selection with weight `nu`.
pub fn outage_wd_of_nu<T: Real>(config: &SystemConfig<T>, nu: T) -> Result<T> {
    require_two("outage_wd_of_nu", config)?;
    let nu = check_nu("outage_wd_of_nu", nu)?;
    Ok(outage_wd_of_ratio(config, ratio(config, nu)))
}

/// Outage probability of weighted-difference selection as a function of the
/// tradeoff factor. `δ = 1` gives the energy-only limit.
pub fn outage_wd<T: Real>(config: &SystemConfig<T>, delta: T) -> Result<T> {
    require_two("outage_wd", config)?;
    let delta = check_delta("outage_wd", delta)?;
    Ok(outage_wd_of_ratio(config, ratio_of_delta(delta)))
}
