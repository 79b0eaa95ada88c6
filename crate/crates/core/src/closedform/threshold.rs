use super::bounds::{best_of_n_capacity, c_min};
use super::{binomial, check_delta, energy_to_delta, scaled_e1, single_outage, tradeoff_harmonic};
use crate::error::{Error, Result};
use crate::model::SystemConfig;
use crate::scalar::Real;
use crate::specfun::harmonic;

fn check_tau<T: Real>(op: &'static str, tau: T) -> Result<T> {
    if tau.is_nan() || tau < T::zero() {
        Err(Error::domain(op, format!("tau must be >= 0, got {tau}")))
    } else {
        Ok(tau)
    }
}

/// `Pr{γ_κ < τ} = (1 - e^{-2τ/γ̄})^N`.
fn below_threshold_probability<T: Real>(config: &SystemConfig<T>, tau: T) -> T {
    let single = -(-T::two() * tau / config.mean_snr()).exp_m1();
    single.powi(config.n_relays() as i32)
}

/// Average energy of threshold checking,
/// `ε̄[1 + (H_N - 1)(1 - e^{-2τ/γ̄})^N]`.
pub fn energy_tc_of_tau<T: Real>(config: &SystemConfig<T>, tau: T) -> Result<T> {
    let tau = check_tau("energy_tc_of_tau", tau)?;
    let h: T = harmonic(config.n_relays())?;
    let p = below_threshold_probability(config, tau);
    Ok(config.mean_energy() * (T::one() + (h - T::one()) * p))
}

/// Threshold that yields average energy `energy`,
/// `τ = -(γ̄/2) ln(1 - δ^{1/N})`. Returns `+∞` at the upper energy bound.
pub fn tau_from_energy<T: Real>(config: &SystemConfig<T>, energy: T) -> Result<T> {
    let delta = energy_to_delta("tau_from_energy", config, energy)?;
    let root = delta.powf(T::one() / T::from_count(config.n_relays()));
    Ok(-config.mean_snr() * T::half() * (-root).ln_1p())
}

/// Ergodic capacity of threshold checking with threshold `tau`.
///
/// Sum of the capacity collected while `γ_κ >= τ` and the capacity of the
/// max-energy relay while every SNR is below `τ`; `τ = +∞` gives [`c_min`].
pub fn c_tc_of_tau<T: Real>(config: &SystemConfig<T>, tau: T) -> Result<T> {
    let tau = check_tau("c_tc_of_tau", tau)?;
    if tau.is_infinite() {
        return c_min(config);
    }
    if tau == T::zero() {
        return best_of_n_capacity(config.mean_snr(), config.n_relays());
    }
    let n = config.n_relays();
    let ln2 = T::LN_2();
    let b = T::two() / config.mean_snr();
    let log_tau = tau.ln_1p();

    let mut selected = T::zero();
    for j in 0..n {
        let order = T::from_count(j + 1);
        let a = b * order;
        let weight = (-a * tau).exp();
        let term = binomial::<T>(n - 1, j) * weight * (scaled_e1(a * (tau + T::one()))? + log_tau)
            / order;
        selected = if j % 2 == 0 { selected + term } else { selected - term };
    }
    selected = selected * T::from_count(n) / (T::two() * ln2);

    let decay = (-b * tau).exp();
    let fallback = (scaled_e1(b)? - decay * scaled_e1(b * (T::one() + tau))? - decay * log_tau)
        / (T::two() * ln2);
    let others_below = (-(-b * tau).exp_m1()).powi(n as i32 - 1);
    Ok(selected + fallback * others_below)
}

/// Ergodic capacity of threshold checking at average energy `energy`.
pub fn c_tc<T: Real>(config: &SystemConfig<T>, energy: T) -> Result<T> {
    c_tc_of_tau(config, tau_from_energy(config, energy)?)
}

/// Outage probability of threshold checking with threshold `tau`:
/// `q^N` when `τ <= γ_th`, else `q(1 - e^{-2τ/γ̄})^{N-1}`.
pub fn outage_tc_of_tau<T: Real>(config: &SystemConfig<T>, tau: T) -> Result<T> {
    let tau = check_tau("outage_tc_of_tau", tau)?;
    let q = single_outage(config);
    let n = config.n_relays() as i32;
    if tau <= config.outage_threshold() {
        Ok(q.powi(n))
    } else {
        let others = -(-T::two() * tau / config.mean_snr()).exp_m1();
        Ok(q * others.powi(n - 1))
    }
}

/// Outage probability of threshold checking as a function of the tradeoff
/// factor: `q^N` for `δ <= q^N`, else `q·δ^{(N-1)/N}`.
pub fn outage_tc<T: Real>(config: &SystemConfig<T>, delta: T) -> Result<T> {
    tradeoff_harmonic("outage_tc", config)?;
    let delta = check_delta("outage_tc", delta)?;
    let n = config.n_relays();
    let q = single_outage(config);
    let breakpoint = q.powi(n as i32);
    if delta <= breakpoint {
        Ok(breakpoint)
    } else {
        Ok(q * delta.powf(T::from_count(n - 1) / T::from_count(n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::c_max;
    use approx::assert_relative_eq;

    fn config(n: usize, snr: f64) -> SystemConfig {
        SystemConfig::new(n, snr, 1.0, 1.0).unwrap()
    }

    #[test]
    fn tau_endpoints() {
        let c = config(2, 10.0);
        assert_eq!(tau_from_energy(&c, 1.0).unwrap(), 0.0);
        assert_eq!(tau_from_energy(&c, 1.5).unwrap(), f64::INFINITY);
        assert_eq!(energy_tc_of_tau(&c, f64::INFINITY).unwrap(), 1.5);
        assert_eq!(energy_tc_of_tau(&c, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn energy_at_tau_equal_mean_snr() {
        let c = config(2, 10.0);
        let p = (1.0 - (-2.0f64).exp()).powi(2);
        assert_relative_eq!(energy_tc_of_tau(&c, 10.0).unwrap(), 1.0 + 0.5 * p, max_relative = 1e-14);
    }

    #[test]
    fn capacity_limits() {
        for n in 1..5 {
            let c = config(n, 30.0);
            assert_eq!(c_tc_of_tau(&c, 0.0).unwrap(), c_max(&c).unwrap());
            assert_relative_eq!(c_tc_of_tau(&c, 1e-12).unwrap(), c_max(&c).unwrap(), max_relative = 1e-9);
            assert_eq!(c_tc_of_tau(&c, f64::INFINITY).unwrap(), c_min(&c).unwrap());
            assert_relative_eq!(c_tc_of_tau(&c, 1e6).unwrap(), c_min(&c).unwrap(), max_relative = 1e-9);
        }
    }

    #[test]
    fn one_relay_is_threshold_independent() {
        let c = config(1, 10.0);
        for tau in [0.5, 3.0, 40.0] {
            assert_relative_eq!(c_tc_of_tau(&c, tau).unwrap(), c_min(&c).unwrap(), max_relative = 1e-12);
        }
    }

    #[test]
    fn outage_breakpoint_is_continuous() {
        let c = config(3, 10.0);
        let q = 1.0 - (-0.2f64).exp();
        let star = q.powi(3);
        let left = outage_tc(&c, star).unwrap();
        let right = outage_tc(&c, star * (1.0 + 1e-15)).unwrap();
        assert!((left - right).abs() < 1e-12);
        assert_relative_eq!(outage_tc(&c, 1.0).unwrap(), q, max_relative = 1e-14);
        assert_relative_eq!(outage_tc(&c, 0.0).unwrap(), star, max_relative = 1e-14);
    }

    #[test]
    fn outage_forms_agree() {
        let c = config(3, 10.0);
        for tau in [0.2, 1.0, 1.5, 4.0, 25.0] {
            let energy = energy_tc_of_tau(&c, tau).unwrap();
            let delta = crate::closedform::delta_from_energy(&c, energy).unwrap();
            assert_relative_eq!(
                outage_tc(&c, delta).unwrap(),
                outage_tc_of_tau(&c, tau).unwrap(),
                max_relative = 1e-10
            );
        }
    }
}
