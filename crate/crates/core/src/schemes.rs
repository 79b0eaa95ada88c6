//! Relay-selection policies.
//!
//! Relay indices are zero-based: relay `R_1` is index 0.

use crate::error::{Error, Result};
use crate::model::{half_log2_1p, ChannelFrame};
use crate::scalar::Real;

/// Nonnegative tradeoff weight, or the limit of an infinite weight, which
/// selects purely by energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight<T = f64> {
    Finite(T),
    EnergyOnly,
}

impl<T: Real> Weight<T> {
    /// Maps `+∞` to [`Weight::EnergyOnly`]; rejects negative values and NaN.
    pub fn new(value: T) -> Result<Self> {
        if value.is_nan() || value < T::zero() {
            return Err(Error::domain("weight", format!("expected value >= 0, got {value}")));
        }
        if value.is_infinite() {
            Ok(Weight::EnergyOnly)
        } else {
            Ok(Weight::Finite(value))
        }
    }

    /// The weight as a number, `+∞` for [`Weight::EnergyOnly`].
    pub fn value(self) -> T {
        match self {
            Weight::Finite(v) => v,
            Weight::EnergyOnly => T::infinity(),
        }
    }

    fn check(self, name: &'static str) -> Result<()> {
        match self {
            Weight::Finite(v) if !(v.is_finite() && v >= T::zero()) => Err(Error::domain(
                name,
                format!("expected finite value >= 0 or the energy-only flag, got {v}"),
            )),
            _ => Ok(()),
        }
    }
}

/// Per-frame performance metric `F` of the Pareto-optimal policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParetoMetric {
    /// `F(γ) = ½·log₂(1 + γ)`.
    Capacity,
    /// `F(γ) = 1` when `γ >= γ_th`, else 0.
    OutageIndicator,
}

impl ParetoMetric {
    /// Evaluates `F(γ)`.
    #[inline]
    pub fn eval<T: Real>(self, snr: T, threshold: T) -> T {
        match self {
            ParetoMetric::Capacity => half_log2_1p(snr),
            ParetoMetric::OutageIndicator => {
                if snr < threshold {
                    T::zero()
                } else {
                    T::one()
                }
            }
        }
    }
}

/// A selection policy together with its tuning parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeParam<T = f64> {
    /// Max-SNR relay with probability `mu`, max-energy relay otherwise.
    TimeSharing { mu: T },
    /// Max-SNR relay if its SNR reaches `tau`, max-energy relay otherwise.
    /// `tau = +∞` always selects by energy.
    ThresholdChecking { tau: T },
    /// Two-relay weighted SNR/energy difference.
    WeightedDifference { nu: Weight<T> },
    /// Two-relay Lagrangian rule for metric `F`.
    ParetoOptimal { zeta: Weight<T>, metric: ParetoMetric },
}

impl<T: Real> SchemeParam<T> {
    /// Checks the parameter range and the relay count.
    pub fn validate(&self, n_relays: usize) -> Result<()> {
        match *self {
            SchemeParam::TimeSharing { mu } => {
                if !(mu >= T::zero() && mu <= T::one()) {
                    return Err(Error::domain("time_sharing", format!("mu must lie in [0, 1], got {mu}")));
                }
            }
            SchemeParam::ThresholdChecking { tau } => {
                if tau.is_nan() || tau < T::zero() {
                    return Err(Error::domain("threshold_checking", format!("tau must be >= 0, got {tau}")));
                }
            }
            SchemeParam::WeightedDifference { nu } => {
                nu.check("weighted_difference")?;
                require_two("weighted_difference", n_relays)?;
            }
            SchemeParam::ParetoOptimal { zeta, .. } => {
                zeta.check("pareto")?;
                require_two("pareto", n_relays)?;
            }
        }
        Ok(())
    }

    /// Whether the policy consumes the per-frame coin.
    pub fn uses_coin(&self) -> bool {
        matches!(self, SchemeParam::TimeSharing { .. })
    }

    /// Applies a validated policy to one frame. `coin` is a uniform draw in
    /// `[0, 1)`, only read by time sharing.
    ///
    /// # Panics
    /// May panic or misbehave if [`SchemeParam::validate`] was not passed.
    #[inline]
    pub fn select(&self, frame: &ChannelFrame<T>, coin: f64, threshold: T) -> usize {
        let (snr, energy) = (frame.snr(), frame.energy());
        match *self {
            SchemeParam::TimeSharing { mu } => {
                if T::lit(coin) < mu {
                    argmax(snr)
                } else {
                    argmax(energy)
                }
            }
            SchemeParam::ThresholdChecking { tau } => threshold_rule(snr, energy, tau),
            SchemeParam::WeightedDifference { nu } => weighted_difference_rule(snr, energy, nu),
            SchemeParam::ParetoOptimal { zeta, metric } => {
                pareto_rule(snr, energy, zeta, metric, threshold)
            }
        }
    }
}

fn require_two(op: &'static str, n_relays: usize) -> Result<()> {
    if n_relays == 2 {
        Ok(())
    } else {
        Err(Error::Dimension {
            op,
            expected: 2,
            actual: n_relays,
        })
    }
}

/// Lowest index attaining the maximum.
#[inline]
fn argmax<T: Real>(values: &[T]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Relay `κ` with the largest end-to-end SNR (lowest index on ties).
pub fn argmax_snr<T: Real>(frame: &ChannelFrame<T>) -> usize {
    argmax(frame.snr())
}

/// Relay `λ` with the largest harvestable energy (lowest index on ties).
pub fn argmax_energy<T: Real>(frame: &ChannelFrame<T>) -> usize {
    argmax(frame.energy())
}

/// Selects `κ` when `coin < mu`, else `λ`.
pub fn select_time_sharing<T: Real>(frame: &ChannelFrame<T>, mu: T, coin: T) -> usize {
    if coin < mu {
        argmax_snr(frame)
    } else {
        argmax_energy(frame)
    }
}

#[inline]
fn threshold_rule<T: Real>(snr: &[T], energy: &[T], tau: T) -> usize {
    let kappa = argmax(snr);
    if snr[kappa] >= tau {
        kappa
    } else {
        argmax(energy)
    }
}

/// Selects `κ` when `γ_κ >= τ`, else `λ`.
pub fn select_threshold<T: Real>(frame: &ChannelFrame<T>, tau: T) -> usize {
    threshold_rule(frame.snr(), frame.energy(), tau)
}

#[inline]
fn weighted_difference_rule<T: Real>(snr: &[T], energy: &[T], nu: Weight<T>) -> usize {
    match nu {
        Weight::EnergyOnly => argmax(energy),
        Weight::Finite(nu) => {
            if snr[0] - snr[1] >= nu * (energy[1] - energy[0]) {
                0
            } else {
                1
            }
        }
    }
}

/// Two-relay rule: relay 0 when `γ₁ - γ₂ > ν(ε₂ - ε₁)`, relay 1 when `<`,
/// relay 0 on equality.
pub fn select_weighted_difference<T: Real>(frame: &ChannelFrame<T>, nu: Weight<T>) -> Result<usize> {
    require_two("select_weighted_difference", frame.n_relays())?;
    nu.check("select_weighted_difference")?;
    Ok(weighted_difference_rule(frame.snr(), frame.energy(), nu))
}

#[inline]
fn pareto_rule<T: Real>(snr: &[T], energy: &[T], zeta: Weight<T>, metric: ParetoMetric, threshold: T) -> usize {
    let larger_energy = if energy[1] > energy[0] { 1 } else { 0 };
    match zeta {
        Weight::EnergyOnly => larger_energy,
        Weight::Finite(zeta) => {
            let gain = metric.eval(snr[0], threshold) - metric.eval(snr[1], threshold);
            let cost = zeta * (energy[1] - energy[0]);
            if gain > cost {
                0
            } else if gain < cost {
                1
            } else {
                larger_energy
            }
        }
    }
}

/// Two-relay Lagrangian rule: relay 0 when `F(γ₁) - F(γ₂) > ζ(ε₂ - ε₁)`,
/// relay 1 when `<`. On equality the relay with more energy is chosen,
/// relay 0 if the energies are equal too.
pub fn select_pareto<T: Real>(
    frame: &ChannelFrame<T>,
    zeta: Weight<T>,
    metric: ParetoMetric,
    threshold: T,
) -> Result<usize> {
    require_two("select_pareto", frame.n_relays())?;
    zeta.check("select_pareto")?;
    Ok(pareto_rule(frame.snr(), frame.energy(), zeta, metric, threshold))
}
