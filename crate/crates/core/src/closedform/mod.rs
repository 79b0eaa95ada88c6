//! Analytic tradeoff expressions: capacity and energy bounds, the three
//! practical schemes' capacity/energy/outage curves, their high-SNR
//! asymptotics and the outage Pareto frontier of the two-relay network.
//!
//! Curves against energy are computed by inverting the energy expression for
//! the scheme parameter and evaluating the parameter form. The unsimplified
//! composite expressions in [`direct`] exist to cross-check this path.

mod asymptotic;
mod bounds;
pub mod direct;
mod pareto;
mod threshold;
mod time_sharing;
mod weighted;

pub use asymptotic::{array_gain, asymptotic_outage, SchemeKind};
pub use bounds::{c_max, c_min, delta_from_energy, energy_bounds, energy_from_delta};
pub use pareto::{
    delta_range_outage, pareto_no_outage, pareto_outage_energy, pareto_outage_energy_min,
    pareto_outage_point,
};
pub use threshold::{c_tc, c_tc_of_tau, energy_tc_of_tau, outage_tc, outage_tc_of_tau, tau_from_energy};
pub use time_sharing::{c_ts, c_ts_of_mu, energy_ts_of_mu, mu_from_energy, outage_ts};
pub use weighted::{c_wd, c_wd_of_nu, energy_wd_of_nu, nu_from_energy, outage_wd, outage_wd_of_nu};

use crate::error::{Error, Result};
use crate::model::SystemConfig;
use crate::scalar::Real;
use crate::specfun::{exp_scaled_e1, harmonic};

/// One point of a tradeoff curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffPoint<T = f64> {
    /// Average transferred energy.
    pub energy: T,
    /// Ergodic capacity in bit/s/Hz, or a probability.
    pub value: T,
    /// Position of `energy` within `[ε̄, H_N·ε̄]`.
    pub delta: T,
}

/// Relative slack accepted on energy and δ arguments at the range ends.
const RANGE_SLACK: f64 = 1e-9;

/// `H_N`, failing for `N = 1` where no tradeoff exists.
pub(crate) fn tradeoff_harmonic<T: Real>(op: &'static str, config: &SystemConfig<T>) -> Result<T> {
    if config.n_relays() < 2 {
        return Err(Error::domain(op, "a tradeoff needs at least two relays"));
    }
    harmonic(config.n_relays())
}

pub(crate) fn require_two<T: Real>(op: &'static str, config: &SystemConfig<T>) -> Result<()> {
    if config.n_relays() == 2 {
        Ok(())
    } else {
        Err(Error::Dimension {
            op,
            expected: 2,
            actual: config.n_relays(),
        })
    }
}

/// Validates `δ ∈ [0, 1]`, clamping values within the slack.
pub(crate) fn check_delta<T: Real>(op: &'static str, delta: T) -> Result<T> {
    let slack = T::lit(RANGE_SLACK);
    if delta >= -slack && delta <= T::one() + slack {
        Ok(delta.max(T::zero()).min(T::one()))
    } else {
        Err(Error::domain(op, format!("tradeoff factor must lie in [0, 1], got {delta}")))
    }
}

/// Validates `ε ∈ [ε̄, H_N·ε̄]` and returns its tradeoff factor.
pub(crate) fn energy_to_delta<T: Real>(op: &'static str, config: &SystemConfig<T>, energy: T) -> Result<T> {
    let h = tradeoff_harmonic(op, config)?;
    let mean = config.mean_energy();
    let delta = (energy / mean - T::one()) / (h - T::one());
    if delta.is_nan() {
        return Err(Error::domain(op, format!("energy must be a number, got {energy}")));
    }
    check_delta(op, delta).map_err(|_| {
        Error::domain(
            op,
            format!("energy must lie in [{}, {}], got {energy}", mean, h * mean),
        )
    })
}

/// Outage probability of a single relay, `1 - e^{-2γ_th/γ̄}`.
pub(crate) fn single_outage<T: Real>(config: &SystemConfig<T>) -> T {
    -(-T::two() * config.outage_threshold() / config.mean_snr()).exp_m1()
}

/// `e^x E1(x)` for arguments known to be positive.
pub(crate) fn scaled_e1<T: Real>(x: T) -> Result<T> {
    exp_scaled_e1(x)
}

/// Binomial coefficient as a float.
pub(crate) fn binomial<T: Real>(n: usize, k: usize) -> T {
    let k = k.min(n - k);
    let mut c = T::one();
    for i in 0..k {
        c = c * T::from_count(n - i) / T::from_count(i + 1);
    }
    c
}
