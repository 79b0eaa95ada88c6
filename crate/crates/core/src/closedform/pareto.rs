use super::{require_two, single_outage, TradeoffPoint};
use crate::error::{Error, Result};
use crate::model::SystemConfig;
use crate::scalar::Real;

fn check_zeta<T: Real>(op: &'static str, zeta: T) -> Result<T> {
    if zeta.is_nan() || zeta < T::zero() {
        Err(Error::domain(op, format!("zeta must be >= 0, got {zeta}")))
    } else {
        Ok(zeta)
    }
}

/// `(p·q, e^{-c}, c)` with `p = e^{-2γ_th/γ̄}`, `q = 1 - p` and `c = 1/(ζε̄)`.
/// `pq` is the probability that a given relay is the only one clearing the
/// threshold and `e^{-c}` the probability that the other relay's energy
/// surplus exceeds `1/ζ`.
fn parts<T: Real>(op: &'static str, config: &SystemConfig<T>, zeta: T) -> Result<(T, T, T)> {
    require_two(op, config)?;
    let zeta = check_zeta(op, zeta)?;
    let q = single_outage(config);
    let pq = (T::one() - q) * q;
    let c = (zeta * config.mean_energy()).recip();
    Ok((pq, (-c).exp(), c))
}

/// Average energy of the two-relay Pareto-optimal outage policy,
/// `ε̄[3/2 - pq + pq·e^{-c}(1 + c)]`.
///
/// `ζ = 0` returns the limit `ζ → 0⁺`: with ties resolved towards the relay
/// with more energy, the policy at `ζ = 0` coincides with that limit.
pub fn pareto_outage_energy<T: Real>(config: &SystemConfig<T>, zeta: T) -> Result<T> {
    let (pq, decay, c) = parts("pareto_outage_energy", config, zeta)?;
    let extra = if decay == T::zero() { T::zero() } else { decay * (T::one() + c) };
    Ok(config.mean_energy() * (T::lit(1.5) - pq + pq * extra))
}

/// Probability of no outage of the Pareto-optimal outage policy,
/// `1 - q² - pq·e^{-c}`.
pub fn pareto_no_outage<T: Real>(config: &SystemConfig<T>, zeta: T) -> Result<T> {
    let (pq, decay, _) = parts("pareto_no_outage", config, zeta)?;
    let q = single_outage(config);
    Ok(T::one() - q * q - pq * decay)
}

/// Smallest average energy reachable by the policy, `ε̄(3/2 - pq)`.
pub fn pareto_outage_energy_min<T: Real>(config: &SystemConfig<T>) -> Result<T> {
    pareto_outage_energy(config, T::zero())
}

/// Range `[1 - 2pq, 1]` of tradeoff factors the policy spans.
pub fn delta_range_outage<T: Real>(config: &SystemConfig<T>) -> Result<(T, T)> {
    require_two("delta_range_outage", config)?;
    let q = single_outage(config);
    Ok((T::one() - T::two() * (T::one() - q) * q, T::one()))
}

/// `(energy, no-outage probability, δ)` of the policy at weight `zeta`.
pub fn pareto_outage_point<T: Real>(config: &SystemConfig<T>, zeta: T) -> Result<TradeoffPoint<T>> {
    let energy = pareto_outage_energy(config, zeta)?;
    let mean = config.mean_energy();
    Ok(TradeoffPoint {
        energy,
        value: pareto_no_outage(config, zeta)?,
        delta: (T::two() * (energy / mean - T::one())).min(T::one()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn config(snr: f64) -> SystemConfig {
        SystemConfig::new(2, snr, 1.0, 1.0).unwrap()
    }

    #[test]
    fn delta_range_at_reference_snr() {
        let c = config(2.0 / std::f64::consts::LN_2);
        let (lo, hi) = delta_range_outage(&c).unwrap();
        assert!((lo - 0.5).abs() < 1e-15, "{lo}");
        assert_eq!(hi, 1.0);
    }

    #[test]
    fn small_weight_limits() {
        let c = config(10.0);
        let p: f64 = (-0.2f64).exp();
        let expected = 1.5 + p * p - p;
        assert_relative_eq!(pareto_outage_energy_min(&c).unwrap(), expected, max_relative = 1e-14);
        assert_relative_eq!(pareto_outage_energy(&c, 1e-6).unwrap(), expected, max_relative = 1e-12);
        let q = 1.0 - p;
        assert_relative_eq!(pareto_no_outage(&c, 0.0).unwrap(), 1.0 - q * q, max_relative = 1e-14);
        let (lo, _) = delta_range_outage(&c).unwrap();
        assert_relative_eq!(pareto_outage_point(&c, 0.0).unwrap().delta, lo, max_relative = 1e-13);
    }

    #[test]
    fn large_weight_limits() {
        let c = config(10.0);
        let p: f64 = (-0.2f64).exp();
        assert_relative_eq!(pareto_outage_energy(&c, f64::INFINITY).unwrap(), 1.5, max_relative = 1e-15);
        assert_relative_eq!(pareto_no_outage(&c, f64::INFINITY).unwrap(), p, max_relative = 1e-14);
        assert_relative_eq!(pareto_no_outage(&c, 1e9).unwrap(), p, max_relative = 1e-8);
    }

    #[test]
    fn expanded_form_agrees() {
        // Expanded form: (e^{-4g}/2)[ε̄(2 - 2e^{2g} + 3e^{4g}) + 2e^{-c}(ζε̄ + 1)(e^{2g} - 1)/ζ].
        let c = config(7.0);
        let g: f64 = 1.0 / 7.0;
        for zeta in [0.05f64, 0.3, 1.0, 4.0] {
            let e2 = (2.0 * g).exp();
            let composite = (-4.0 * g).exp() / 2.0
                * ((2.0 - 2.0 * e2 + 3.0 * e2 * e2) + 2.0 * (-1.0 / zeta).exp() * (zeta + 1.0) * (e2 - 1.0) / zeta);
            assert_relative_eq!(pareto_outage_energy(&c, zeta).unwrap(), composite, max_relative = 1e-13);
            let no_out = (-4.0 * g).exp() * (2.0 * e2 - (-1.0 / zeta).exp() * (e2 - 1.0) - 1.0);
            assert_relative_eq!(pareto_no_outage(&c, zeta).unwrap(), no_out, max_relative = 1e-13);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(pareto_outage_energy(&config(10.0), -1.0).is_err());
        let three = SystemConfig::new(3, 10.0, 1.0, 1.0).unwrap();
        assert!(pareto_no_outage(&three, 1.0).is_err());
    }
}
