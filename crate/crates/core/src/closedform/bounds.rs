use super::{binomial, check_delta, energy_to_delta, scaled_e1, tradeoff_harmonic};
use crate::error::Result;
use crate::model::SystemConfig;
use crate::scalar::Real;
use crate::specfun::harmonic;

/// Ergodic capacity of the best of `n` relays,
/// `n Σ_j (-1)^j C(n-1, j) e^{a_j} E1(a_j) / (2(j+1) ln 2)` with `a_j = 2(j+1)/γ̄`.
///
/// The alternating sum loses about `n` bits to cancellation, which is
/// harmless for the relay counts of interest.
pub(crate) fn best_of_n_capacity<T: Real>(mean_snr: T, n: usize) -> Result<T> {
    let nf = T::from_count(n);
    let mut sum = T::zero();
    for j in 0..n {
        let order = T::from_count(j + 1);
        let term = binomial::<T>(n - 1, j) * scaled_e1(T::two() * order / mean_snr)? / order;
        sum = if j % 2 == 0 { sum + term } else { sum - term };
    }
    Ok(nf * sum / (T::two() * T::LN_2()))
}

/// Maximum ergodic capacity, attained by always selecting the max-SNR relay.
pub fn c_max<T: Real>(config: &SystemConfig<T>) -> Result<T> {
    best_of_n_capacity(config.mean_snr(), config.n_relays())
}

/// Minimum ergodic capacity, attained by always selecting the max-energy
/// relay: `e^{2/γ̄} E1(2/γ̄) / (2 ln 2)`.
pub fn c_min<T: Real>(config: &SystemConfig<T>) -> Result<T> {
    best_of_n_capacity(config.mean_snr(), 1)
}

/// `(ε̄, H_N·ε̄)`: the average energy of max-SNR and max-energy selection.
pub fn energy_bounds<T: Real>(config: &SystemConfig<T>) -> Result<(T, T)> {
    let mean = config.mean_energy();
    Ok((mean, mean * harmonic(config.n_relays())?))
}

/// Tradeoff factor `δ = (ε/ε̄ - 1) / (H_N - 1)`.
pub fn delta_from_energy<T: Real>(config: &SystemConfig<T>, energy: T) -> Result<T> {
    energy_to_delta("delta_from_energy", config, energy)
}

/// Inverse of [`delta_from_energy`], `ε = ε̄(1 + δ(H_N - 1))`.
pub fn energy_from_delta<T: Real>(config: &SystemConfig<T>, delta: T) -> Result<T> {
    let h = tradeoff_harmonic("energy_from_delta", config)?;
    let delta = check_delta("energy_from_delta", delta)?;
    Ok(config.mean_energy() * (T::one() + delta * (h - T::one())))
}
