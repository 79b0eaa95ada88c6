//! System configuration, per-frame channel realizations and the elementary
//! per-frame quantities.
//!
//! Every hop SNR is exponential with mean `γ̄` (Rayleigh fading); the
//! end-to-end SNR of a decode-and-forward relay is the minimum of its two
//! hops, hence exponential with mean `γ̄/2`. The energy a relay can deliver to
//! the harvester is exponential with mean `ε̄`.

use rand::Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::scalar::{db_to_linear, Real};

/// Static parameters of the relay network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemConfig<T = f64> {
    n_relays: usize,
    mean_snr: T,
    mean_energy: T,
    outage_threshold: T,
}

fn positive_finite<T: Real>(name: &str, value: T) -> Result<T> {
    if value.is_finite() && value > T::zero() {
        Ok(value)
    } else {
        Err(Error::Config(format!(
            "{name} must be finite and positive, got {value}"
        )))
    }
}

/// Physical link parameters that determine `γ̄` and `ε̄` together.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalLink<T = f64> {
    /// Energy absorption coefficient of the harvester, `0 < β <= 1`.
    pub beta: T,
    pub transmit_power: T,
    pub noise_power: T,
    /// Mean squared channel gain of every link.
    pub mean_gain: T,
}

impl<T: Real> SystemConfig<T> {
    pub fn new(n_relays: usize, mean_snr: T, mean_energy: T, outage_threshold: T) -> Result<Self> {
        if n_relays == 0 {
            return Err(Error::Config("n_relays must be at least 1".into()));
        }
        Ok(Self {
            n_relays,
            mean_snr: positive_finite("mean_snr", mean_snr)?,
            mean_energy: positive_finite("mean_energy", mean_energy)?,
            outage_threshold: positive_finite("outage_threshold", outage_threshold)?,
        })
    }

    /// Builds a configuration whose outage threshold corresponds to a fixed
    /// rate `r` in bit/s/Hz over the two-hop link: `γ_th = 2^{2r} - 1`.
    pub fn with_rate(n_relays: usize, mean_snr: T, mean_energy: T, rate: T) -> Result<Self> {
        let rate = positive_finite("rate", rate)?;
        Self::new(n_relays, mean_snr, mean_energy, threshold_from_rate(rate))
    }

    /// Builds a configuration from transmit power, noise power, mean channel
    /// gain and harvester efficiency: `γ̄ = P·ā/N₀` and `ε̄ = β·N₀·γ̄`.
    pub fn from_physical(n_relays: usize, link: PhysicalLink<T>, outage_threshold: T) -> Result<Self> {
        let beta = link.beta;
        if !(beta > T::zero() && beta <= T::one()) {
            return Err(Error::Config(format!("beta must lie in (0, 1], got {beta}")));
        }
        let power = positive_finite("transmit_power", link.transmit_power)?;
        let noise = positive_finite("noise_power", link.noise_power)?;
        let gain = positive_finite("mean_gain", link.mean_gain)?;
        let mean_snr = power * gain / noise;
        Self::new(n_relays, mean_snr, beta * noise * mean_snr, outage_threshold)
    }

    /// Same link statistics with a different number of relays.
    pub fn with_n_relays(&self, n_relays: usize) -> Result<Self> {
        Self::new(n_relays, self.mean_snr, self.mean_energy, self.outage_threshold)
    }

    pub fn with_mean_snr(&self, mean_snr: T) -> Result<Self> {
        Self::new(self.n_relays, mean_snr, self.mean_energy, self.outage_threshold)
    }

    pub fn n_relays(&self) -> usize {
        self.n_relays
    }

    /// Mean SNR `γ̄` of every hop (linear).
    pub fn mean_snr(&self) -> T {
        self.mean_snr
    }

    /// Mean harvestable energy `ε̄` per relay.
    pub fn mean_energy(&self) -> T {
        self.mean_energy
    }

    /// Outage threshold `γ_th` (linear).
    pub fn outage_threshold(&self) -> T {
        self.outage_threshold
    }

    /// Mean of the end-to-end SNR of one relay, `γ̄/2`.
    pub fn mean_end_to_end_snr(&self) -> T {
        self.mean_snr * T::half()
    }
}

/// `γ_th = 2^{2r} - 1`.
pub fn threshold_from_rate<T: Real>(rate: T) -> T {
    T::two().powf(T::two() * rate) - T::one()
}

/// One frame's end-to-end SNRs and harvestable energies, indexed by relay.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelFrame<T = f64> {
    snr: Vec<T>,
    energy: Vec<T>,
}

impl<T: Real> ChannelFrame<T> {
    pub fn new(snr: Vec<T>, energy: Vec<T>) -> Result<Self> {
        if snr.is_empty() || snr.len() != energy.len() {
            return Err(Error::Config(format!(
                "frame needs equally long non-empty arrays, got {} SNRs and {} energies",
                snr.len(),
                energy.len()
            )));
        }
        let valid = |v: &T| v.is_finite() && *v >= T::zero();
        if !snr.iter().all(valid) || !energy.iter().all(valid) {
            return Err(Error::Config("frame entries must be finite and nonnegative".into()));
        }
        Ok(Self { snr, energy })
    }

    pub(crate) fn zeroed(n_relays: usize) -> Self {
        Self {
            snr: vec![T::zero(); n_relays],
            energy: vec![T::zero(); n_relays],
        }
    }

    pub fn n_relays(&self) -> usize {
        self.snr.len()
    }

    pub fn snr(&self) -> &[T] {
        &self.snr
    }

    pub fn energy(&self) -> &[T] {
        &self.energy
    }

    /// Redraws the frame in place. Consumes exactly `3·N` uniforms, in the
    /// order `γ_SR1, γ_R1D, ε_1, γ_SR2, ...`.
    pub fn resample<R: Rng + ?Sized>(&mut self, config: &SystemConfig<T>, rng: &mut R) {
        let n = config.n_relays();
        self.snr.resize(n, T::zero());
        self.energy.resize(n, T::zero());
        for i in 0..n {
            let first_hop = exponential(rng, config.mean_snr);
            let second_hop = exponential(rng, config.mean_snr);
            self.snr[i] = first_hop.min(second_hop);
            self.energy[i] = exponential(rng, config.mean_energy);
        }
    }
}

/// Inverse-CDF exponential draw, `-mean·ln(1-u)` with `u ∈ [0, 1)`.
#[inline]
pub(crate) fn exponential<T: Real, R: Rng + ?Sized>(rng: &mut R, mean: T) -> T {
    let u: f64 = rng.random();
    mean * T::lit(-(-u).ln_1p())
}

/// Draws one frame from `rng`.
pub fn sample_frame<T: Real, R: Rng + ?Sized>(config: &SystemConfig<T>, rng: &mut R) -> ChannelFrame<T> {
    let mut frame = ChannelFrame::zeroed(config.n_relays());
    frame.resample(config, rng);
    frame
}

/// Instantaneous capacity of the half-duplex two-hop link, `½·log₂(1 + γ)`.
pub fn instantaneous_capacity<T: Real>(snr: T) -> Result<T> {
    if !(snr.is_finite() && snr >= T::zero()) {
        return Err(Error::domain(
            "instantaneous_capacity",
            format!("expected finite snr >= 0, got {snr}"),
        ));
    }
    Ok(half_log2_1p(snr))
}

#[inline]
pub(crate) fn half_log2_1p<T: Real>(snr: T) -> T {
    snr.ln_1p() * T::half() / T::LN_2()
}

/// 1 when `snr < γ_th`, else 0. An SNR exactly at the threshold is not an
/// outage.
pub fn outage_indicator<T: Real>(snr: T, threshold: T) -> u8 {
    u8::from(snr < threshold)
}

/// Key-value configuration as read from a file or assembled from flags.
///
/// Recognized keys: `n_relays`, `mean_snr_db` or `mean_snr`, `mean_energy`
/// (or `beta` together with `noise_power`, giving `ε̄ = β·N₀·γ̄`),
/// `outage_threshold` or `rate`, and `seed`.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSource {
    pub n_relays: Option<usize>,
    pub mean_snr_db: Option<f64>,
    pub mean_snr: Option<f64>,
    pub mean_energy: Option<f64>,
    pub beta: Option<f64>,
    pub noise_power: Option<f64>,
    pub outage_threshold: Option<f64>,
    pub rate: Option<f64>,
    pub seed: Option<u64>,
}

impl ConfigSource {
    /// Parses `key = value` lines (TOML syntax; `#` starts a comment).
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))
    }

    /// Values set in `other` replace the ones in `self`. A newly given SNR,
    /// threshold or energy form replaces its alternative spelling as well.
    pub fn overlay(mut self, other: &ConfigSource) -> ConfigSource {
        if other.mean_snr_db.is_some() || other.mean_snr.is_some() {
            self.mean_snr_db = other.mean_snr_db;
            self.mean_snr = other.mean_snr;
        }
        if other.outage_threshold.is_some() || other.rate.is_some() {
            self.outage_threshold = other.outage_threshold;
            self.rate = other.rate;
        }
        if other.mean_energy.is_some() {
            self.mean_energy = other.mean_energy;
            self.beta = None;
            self.noise_power = None;
        }
        if other.beta.is_some() || other.noise_power.is_some() {
            self.mean_energy = None;
            self.beta = other.beta.or(self.beta);
            self.noise_power = other.noise_power.or(self.noise_power);
        }
        self.n_relays = other.n_relays.or(self.n_relays);
        self.seed = other.seed.or(self.seed);
        self
    }

    /// Builds the validated configuration.
    pub fn resolve(&self) -> Result<SystemConfig<f64>> {
        let n_relays = self
            .n_relays
            .ok_or_else(|| Error::Config("n_relays is required".into()))?;
        let mean_snr = match (self.mean_snr_db, self.mean_snr) {
            (Some(db), None) => db_to_linear(db),
            (None, Some(linear)) => linear,
            (Some(_), Some(_)) => {
                return Err(Error::Config("give either mean_snr_db or mean_snr, not both".into()))
            }
            (None, None) => return Err(Error::Config("mean_snr_db or mean_snr is required".into())),
        };
        let mean_energy = match (self.mean_energy, self.beta, self.noise_power) {
            (Some(e), None, None) => e,
            (None, Some(beta), Some(noise)) => {
                if !(beta > 0.0 && beta <= 1.0) {
                    return Err(Error::Config(format!("beta must lie in (0, 1], got {beta}")));
                }
                beta * positive_finite("noise_power", noise)? * mean_snr
            }
            (None, None, None) => 1.0,
            _ => {
                return Err(Error::Config(
                    "give either mean_energy or both beta and noise_power".into(),
                ))
            }
        };
        match (self.outage_threshold, self.rate) {
            (Some(th), None) => SystemConfig::new(n_relays, mean_snr, mean_energy, th),
            (None, Some(rate)) => SystemConfig::with_rate(n_relays, mean_snr, mean_energy, rate),
            (Some(_), Some(_)) => {
                Err(Error::Config("give either outage_threshold or rate, not both".into()))
            }
            (None, None) => SystemConfig::new(n_relays, mean_snr, mean_energy, 1.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn config(n: usize, snr: f64) -> SystemConfig {
        SystemConfig::new(n, snr, 1.0, 1.0).unwrap()
    }

    #[test]
    fn rejects_invalid_configs() {
        assert!(SystemConfig::new(0, 10.0, 1.0, 1.0).is_err());
        assert!(SystemConfig::new(2, -1.0, 1.0, 1.0).is_err());
        assert!(SystemConfig::new(2, 10.0, f64::INFINITY, 1.0).is_err());
        assert!(SystemConfig::new(2, 10.0, 1.0, 0.0).is_err());
        assert!(SystemConfig::new(2, f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn rate_maps_to_threshold() {
        let c = SystemConfig::with_rate(2, 10.0, 1.0, 1.0).unwrap();
        assert_eq!(c.outage_threshold(), 3.0);
        let c = SystemConfig::with_rate(2, 10.0, 1.0, 0.5).unwrap();
        assert_eq!(c.outage_threshold(), 1.0);
    }

    #[test]
    fn physical_parameters() {
        let link = PhysicalLink {
            beta: 0.5f64,
            transmit_power: 2.0,
            noise_power: 0.1,
            mean_gain: 0.5,
        };
        let c = SystemConfig::from_physical(2, link, 1.0).unwrap();
        assert!((c.mean_snr() - 10.0).abs() < 1e-12);
        assert!((c.mean_energy() - 0.5 * 0.1 * 10.0).abs() < 1e-12);
        let bad = PhysicalLink { beta: 1.5, ..link };
        assert!(SystemConfig::from_physical(2, bad, 1.0).is_err());
        let bad = PhysicalLink { beta: 0.0, ..link };
        assert!(SystemConfig::from_physical(2, bad, 1.0).is_err());
    }

    #[test]
    fn capacity_values() {
        assert_eq!(instantaneous_capacity(0.0f64).unwrap(), 0.0);
        assert!((instantaneous_capacity(3.0f64).unwrap() - 1.0).abs() < 1e-15);
        assert!((instantaneous_capacity(1.0f64).unwrap() - 0.5).abs() < 1e-15);
        assert!(instantaneous_capacity(-1.0f64).is_err());
        assert!(instantaneous_capacity(f64::NAN).is_err());
    }

    #[test]
    fn outage_boundary_is_not_an_outage() {
        assert_eq!(outage_indicator(0.5, 1.0), 1);
        assert_eq!(outage_indicator(1.0, 1.0), 0);
        assert_eq!(outage_indicator(2.0, 1.0), 0);
    }

    #[test]
    fn frame_validation() {
        assert!(ChannelFrame::new(vec![1.0, 2.0], vec![1.0]).is_err());
        assert!(ChannelFrame::<f64>::new(vec![], vec![]).is_err());
        assert!(ChannelFrame::new(vec![-1.0], vec![1.0]).is_err());
        assert!(ChannelFrame::new(vec![1.0], vec![f64::INFINITY]).is_err());
        assert!(ChannelFrame::new(vec![1.0, 3.0], vec![5.0, 2.0]).is_ok());
    }

    #[test]
    fn sampling_is_reproducible() {
        let c = config(3, 10.0);
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            assert_eq!(sample_frame(&c, &mut a), sample_frame(&c, &mut b));
        }
    }

    fn mean_and_se(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (mean, (var / n).sqrt())
    }

    #[test]
    fn sample_means_match_the_model() {
        let c = SystemConfig::new(2, 10.0, 1.0, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut frame = ChannelFrame::zeroed(2);
        let n = 1_000_000;
        let mut snr = Vec::with_capacity(n);
        let mut energy = Vec::with_capacity(n);
        let mut best_below_mean = 0usize;
        for _ in 0..n {
            frame.resample(&c, &mut rng);
            snr.push(frame.snr()[0]);
            energy.push(frame.energy()[1]);
            let best = frame.snr().iter().cloned().fold(0.0, f64::max);
            if best <= 10.0 {
                best_below_mean += 1;
            }
        }
        let (m, se) = mean_and_se(&snr);
        assert!((m - 5.0).abs() < 3.0 * se, "snr mean {m} ± {se}");
        let (m, se) = mean_and_se(&energy);
        assert!((m - 1.0).abs() < 3.0 * se, "energy mean {m} ± {se}");
        // CDF of the maximum of two end-to-end SNRs at x = γ̄: (1 - e^{-2})².
        let p = (1.0 - (-2.0f64).exp()).powi(2);
        let phat = best_below_mean as f64 / n as f64;
        let se = (p * (1.0 - p) / n as f64).sqrt();
        assert!((phat - p).abs() < 3.0 * se, "{phat} vs {p}");
    }

    #[test]
    fn end_to_end_snr_passes_kolmogorov_smirnov() {
        let c = config(1, 8.0);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let n = 100_000;
        let mut xs: Vec<f64> = (0..n).map(|_| sample_frame(&c, &mut rng).snr()[0]).collect();
        xs.sort_by(f64::total_cmp);
        let rate = 2.0 / c.mean_snr();
        let d = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let cdf = 1.0 - (-rate * x).exp();
                let lo = i as f64 / n as f64;
                let hi = (i + 1) as f64 / n as f64;
                (cdf - lo).abs().max((hi - cdf).abs())
            })
            .fold(0.0, f64::max);
        // Asymptotic critical value at significance 0.001.
        let critical = 1.949_5 / (n as f64).sqrt();
        assert!(d < critical, "KS statistic {d} >= {critical}");
    }

    #[test]
    fn config_file_parsing() {
        let text = "# relay setup\nn_relays = 2\nmean_snr_db = 20\nmean_energy = 2.0\nrate = 0.5\nseed = 9\n";
        let src = ConfigSource::parse(text).unwrap();
        assert_eq!(src.seed, Some(9));
        let c = src.resolve().unwrap();
        assert_eq!(c.n_relays(), 2);
        assert!((c.mean_snr() - 100.0).abs() < 1e-12);
        assert_eq!(c.mean_energy(), 2.0);
        assert_eq!(c.outage_threshold(), 1.0);
    }

    #[test]
    fn config_file_errors() {
        assert!(ConfigSource::parse("n_relays = 2\nbogus = 1\n").is_err());
        let both = ConfigSource::parse("n_relays = 2\nmean_snr = 10\nmean_snr_db = 10\n").unwrap();
        assert!(both.resolve().is_err());
        let missing = ConfigSource::parse("mean_snr = 10\n").unwrap();
        assert!(missing.resolve().is_err());
        let half_physical = ConfigSource::parse("n_relays = 2\nmean_snr = 10\nbeta = 0.5\n").unwrap();
        assert!(half_physical.resolve().is_err());
    }

    #[test]
    fn config_from_beta_and_noise() {
        let src = ConfigSource::parse("n_relays = 3\nmean_snr = 10\nbeta = 0.5\nnoise_power = 0.2\n").unwrap();
        let c = src.resolve().unwrap();
        assert!((c.mean_energy() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn overlay_replaces_alternative_spellings() {
        let file = ConfigSource::parse("n_relays = 2\nmean_snr_db = 10\nrate = 1\n").unwrap();
        let flags = ConfigSource {
            mean_snr: Some(50.0),
            outage_threshold: Some(2.0),
            ..Default::default()
        };
        let c = file.overlay(&flags).resolve().unwrap();
        assert_eq!(c.mean_snr(), 50.0);
        assert_eq!(c.outage_threshold(), 2.0);
    }
}
