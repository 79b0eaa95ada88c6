use super::{check_delta, require_two, tradeoff_harmonic};
use crate::error::Result;
use crate::model::SystemConfig;
use crate::scalar::Real;

/// The practical selection schemes with a closed-form outage expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    TimeSharing,
    ThresholdChecking,
    WeightedDifference,
}

/// Loss factor multiplying `2γ_th/γ̄` in the first-order outage expansion.
fn loss<T: Real>(scheme: SchemeKind, config: &SystemConfig<T>, delta: T) -> Result<T> {
    tradeoff_harmonic("asymptotic_outage", config)?;
    let delta = check_delta("asymptotic_outage", delta)?;
    Ok(match scheme {
        SchemeKind::TimeSharing => delta,
        SchemeKind::ThresholdChecking => {
            let n = config.n_relays();
            delta.powf(T::from_count(n - 1) / T::from_count(n))
        }
        SchemeKind::WeightedDifference => {
            require_two("asymptotic_outage", config)?;
            // 1 - √(1-δ) without cancellation for small δ.
            delta / (T::one() + (T::one() - delta).sqrt())
        }
    })
}

/// First-order high-SNR outage probability,
/// `(2γ_th/γ̄)·{δ, δ^{(N-1)/N}, 1 - √(1-δ)}` for time sharing, threshold
/// checking and weighted difference.
pub fn asymptotic_outage<T: Real>(scheme: SchemeKind, config: &SystemConfig<T>, delta: T) -> Result<T> {
    let ratio = T::two() * config.outage_threshold() / config.mean_snr();
    Ok(ratio * loss(scheme, config, delta)?)
}

/// Array gain of the unit-diversity outage expansion, `1/(2·loss(δ))`;
/// `+∞` at `δ = 0`.
pub fn array_gain<T: Real>(scheme: SchemeKind, config: &SystemConfig<T>, delta: T) -> Result<T> {
    Ok((T::two() * loss(scheme, config, delta)?).recip())
}
