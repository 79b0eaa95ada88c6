use super::bounds::{c_max, c_min};
use super::{check_delta, energy_to_delta, single_outage, tradeoff_harmonic};
use crate::error::{Error, Result};
use crate::model::SystemConfig;
use crate::scalar::Real;

fn check_mu<T: Real>(op: &'static str, mu: T) -> Result<T> {
    if mu >= T::zero() && mu <= T::one() {
        Ok(mu)
    } else {
        Err(Error::domain(op, format!("mu must lie in [0, 1], got {mu}")))
    }
}

/// Average energy of time sharing, `ε̄(μ + (1 - μ)H_N)`.
pub fn energy_ts_of_mu<T: Real>(config: &SystemConfig<T>, mu: T) -> Result<T> {
    let h = tradeoff_harmonic("energy_ts_of_mu", config)?;
    let mu = check_mu("energy_ts_of_mu", mu)?;
    Ok(config.mean_energy() * (mu + (T::one() - mu) * h))
}

/// Time-sharing probability that yields average energy `energy`,
/// `μ = (ε̄H_N - ε) / (ε̄(H_N - 1))`, which equals `1 - δ`.
pub fn mu_from_energy<T: Real>(config: &SystemConfig<T>, energy: T) -> Result<T> {
    Ok(T::one() - energy_to_delta("mu_from_energy", config, energy)?)
}

/// Ergodic capacity of time sharing with probability `mu`.
pub fn c_ts_of_mu<T: Real>(config: &SystemConfig<T>, mu: T) -> Result<T> {
    let mu = check_mu("c_ts_of_mu", mu)?;
    Ok(mu * c_max(config)? + (T::one() - mu) * c_min(config)?)
}

/// Ergodic capacity of time sharing at average energy `energy`.
pub fn c_ts<T: Real>(config: &SystemConfig<T>, energy: T) -> Result<T> {
    c_ts_of_mu(config, mu_from_energy(config, energy)?)
}

/// Outage probability of time sharing, `(1-δ)q^N + δq` with
/// `q = 1 - e^{-2γ_th/γ̄}`.
pub fn outage_ts<T: Real>(config: &SystemConfig<T>, delta: T) -> Result<T> {
    tradeoff_harmonic("outage_ts", config)?;
    let delta = check_delta("outage_ts", delta)?;
    let q = single_outage(config);
    let best = q.powi(config.n_relays() as i32);
    Ok((T::one() - delta) * best + delta * q)
}
