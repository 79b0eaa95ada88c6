//! Composite expressions of the tradeoff curves written directly in terms of
//! the average energy, without the parameter inversion.
//!
//! They evaluate `E1` and the exponentials literally and are meant for
//! interior points of moderate SNR. The production path is the composition
//! in the parent module; these forms exist so that both can be checked
//! against each other.

use super::{energy_to_delta, require_two, single_outage, tradeoff_harmonic};
use crate::error::Result;
use crate::model::SystemConfig;
use crate::scalar::Real;
use crate::specfun::exp_integral_e1;

/// `Σ_j N(-1)^j C(N-1, j) e^{a_j} E1(a_j) / (2(j+1) ln 2)`, `a_j = 2(j+1)/γ̄`,
/// with the exponential and `E1` evaluated separately.
fn literal_best_capacity<T: Real>(config: &SystemConfig<T>) -> Result<T> {
    let n = config.n_relays();
    let mut sum = T::zero();
    for j in 0..n {
        let order = T::from_count(j + 1);
        let a = T::two() * order / config.mean_snr();
        let sign = if j % 2 == 0 { T::one() } else { -T::one() };
        sum = sum
            + T::from_count(n) * sign * super::binomial::<T>(n - 1, j) * a.exp() * exp_integral_e1(a)?
                / (T::two() * order * T::LN_2());
    }
    Ok(sum)
}

/// Time-sharing capacity as a linear function of the energy.
pub fn c_ts_direct<T: Real>(config: &SystemConfig<T>, energy: T) -> Result<T> {
    let h = tradeoff_harmonic("c_ts_direct", config)?;
    energy_to_delta("c_ts_direct", config, energy)?;
    let mean = config.mean_energy();
    let b = T::two() / config.mean_snr();
    let ln2 = T::LN_2();
    let numerator = b.exp() * (energy - mean) * exp_integral_e1(b)?
        + (mean * h - energy) * T::lit(4.0).ln() * literal_best_capacity(config)?;
    Ok(numerator / (T::two() * mean * (h - T::one()) * ln2))
}

/// Threshold-checking capacity with the threshold substituted in terms of
/// the energy. Valid for energies strictly inside the range.
pub fn c_tc_direct<T: Real>(config: &SystemConfig<T>, energy: T) -> Result<T> {
    let delta = energy_to_delta("c_tc_direct", config, energy)?;
    let n = config.n_relays();
    let nf = T::from_count(n);
    let snr = config.mean_snr();
    let ln2 = T::LN_2();
    let b = T::two() / snr;
    let root = delta.powf(nf.recip());
    let u = T::one() - root;
    let log_u = u.ln();
    let stretched = T::one() - snr * log_u * T::half();

    let head = delta.powf((nf - T::one()) / nf) / (T::two() * ln2)
        * (b.exp() * exp_integral_e1(b)? - b.exp() * exp_integral_e1(b - log_u)? - u * stretched.ln());

    let mut sum = T::zero();
    for j in 0..n {
        let order = T::from_count(j + 1);
        let arg = T::two() * order * stretched / snr;
        let sign = if j % 2 == 0 { T::one() } else { -T::one() };
        let inverse_weight = (nf * super::binomial::<T>(n - 1, j) * u.powi(j as i32 + 1)).recip();
        sum = sum
            + (arg.exp() * exp_integral_e1(arg)? + stretched.ln())
                / (T::two() * inverse_weight * sign * order * ln2);
    }
    Ok(head + sum)
}

/// Weighted-difference capacity in terms of the energy, two relays only.
/// Valid for energies strictly inside the range.
///
/// The second `E1` takes `(2/γ̄)(1 - 1/t)` with `t = 1 - √(ε̄/(3ε̄ - 2ε))`;
/// the argument `(2/γ̄)(1/t - 1)` would be negative since `t < 0`.
pub fn c_wd_direct<T: Real>(config: &SystemConfig<T>, energy: T) -> Result<T> {
    require_two("c_wd_direct", config)?;
    energy_to_delta("c_wd_direct", config, energy)?;
    let mean = config.mean_energy();
    let b = T::two() / config.mean_snr();
    let ln2 = T::LN_2();
    let t = T::one() - (mean / (T::lit(3.0) * mean - T::two() * energy)).sqrt();
    let spread = T::one() - t * t;
    let denominator = T::two() * (-b).exp() * spread * ln2;
    let first = (T::two() * spread * exp_integral_e1(b)? - b.exp() * exp_integral_e1(T::two() * b)?) / denominator;
    let second = (-b / t).exp() * t * t * exp_integral_e1(b * (T::one() - t.recip()))? / denominator;
    Ok(first + second)
}

/// Time-sharing outage probability in terms of the energy.
pub fn outage_ts_direct<T: Real>(config: &SystemConfig<T>, energy: T) -> Result<T> {
    let h = tradeoff_harmonic("outage_ts_direct", config)?;
    energy_to_delta("outage_ts_direct", config, energy)?;
    let ratio = energy / config.mean_energy();
    let g = T::two() * config.outage_threshold() / config.mean_snr();
    let best = (T::one() - (-g).exp()).powi(config.n_relays() as i32);
    Ok((-g).exp() * (T::one() - ratio + g.exp() * (ratio + (h - ratio) * best - T::one())) / (h - T::one()))
}

/// Threshold-checking outage probability in terms of the energy.
pub fn outage_tc_direct<T: Real>(config: &SystemConfig<T>, energy: T) -> Result<T> {
    let h = tradeoff_harmonic("outage_tc_direct", config)?;
    energy_to_delta("outage_tc_direct", config, energy)?;
    let n = config.n_relays();
    let ratio = energy / config.mean_energy();
    let q = single_outage(config);
    let best = q.powi(n as i32);
    if ratio <= T::one() + (h - T::one()) * best {
        Ok(best)
    } else {
        let nf = T::from_count(n);
        Ok(q * ((ratio - T::one()) / (h - T::one())).powf((nf - T::one()) / nf))
    }
}

/// Weighted-difference outage probability in terms of the energy, two
/// relays only. Valid for energies strictly inside the range.
///
/// The factor in front of `(2 - e^{2γ_th/(γ̄t)})` is `e^{-2γ_th/γ̄}`; with
/// `e^{+2γ_th/γ̄}` the expression would leave `[0, 1]` as `ε → 1.5ε̄`.
pub fn outage_wd_direct<T: Real>(config: &SystemConfig<T>, energy: T) -> Result<T> {
    require_two("outage_wd_direct", config)?;
    energy_to_delta("outage_wd_direct", config, energy)?;
    let mean = config.mean_energy();
    let t = T::one() - (mean / (T::lit(3.0) * mean - T::two() * energy)).sqrt();
    let g = T::two() * config.outage_threshold() / config.mean_snr();
    let both = (-T::two() * g).exp() * (g.exp() - T::one()).powi(2);
    let mixed = t * t * ((-g).exp() * (T::two() - (g / t).exp()) - T::one());
    Ok((both + mixed) / (T::one() - t * t))
}
