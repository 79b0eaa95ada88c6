//! Monte-Carlo estimation of capacity, energy and outage for any policy.
//!
//! Frame `k` reads the words `[k·s, (k+1)·s)` of one ChaCha8 stream keyed by
//! the seed, with `s = 3N + 1` 64-bit draws per frame (two hop SNRs and one
//! energy per relay, then the time-sharing coin, which is always drawn).
//! Per-frame values are accumulated in fixed point, so the sums are exact
//! integers and the result does not depend on how frames are split into
//! batches or spread over threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{half_log2_1p, ChannelFrame, SystemConfig};
use crate::schemes::SchemeParam;

/// Default number of frames per work unit.
pub const DEFAULT_BATCH_SIZE: u64 = 10_000;

/// Outage estimates backed by fewer events are flagged low-confidence.
pub const MIN_OUTAGE_EVENTS: u64 = 100;

/// Fixed-point scale of the accumulators, `2^56`.
const SCALE: f64 = 72_057_594_037_927_936.0;

/// Run parameters of the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonteCarloConfig {
    n_frames: u64,
    seed: u64,
    batch_size: u64,
}

impl MonteCarloConfig {
    /// Batch size defaults to `min(10⁴, n_frames)`.
    pub fn new(n_frames: u64, seed: u64) -> Result<Self> {
        Self::with_batch_size(n_frames, seed, DEFAULT_BATCH_SIZE.min(n_frames.max(1)))
    }

    pub fn with_batch_size(n_frames: u64, seed: u64, batch_size: u64) -> Result<Self> {
        if n_frames == 0 || batch_size == 0 {
            return Err(Error::Config("n_frames and batch_size must be at least 1".into()));
        }
        if batch_size > n_frames {
            return Err(Error::Config(format!(
                "batch_size {batch_size} exceeds n_frames {n_frames}"
            )));
        }
        Ok(Self {
            n_frames,
            seed,
            batch_size,
        })
    }

    pub fn n_frames(&self) -> u64 {
        self.n_frames
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn batch_size(&self) -> u64 {
        self.batch_size
    }
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    /// Sample standard deviation over `√n`.
    pub std_error: f64,
    pub n: u64,
}

impl Estimate {
    /// Number of standard errors between the mean and `value`; infinite when
    /// they differ but the standard error is zero.
    pub fn z_score(&self, value: f64) -> f64 {
        let diff = self.mean - value;
        if diff == 0.0 {
            0.0
        } else {
            diff.abs() / self.std_error
        }
    }

    /// Whether `value` lies within `k` standard errors of the mean.
    pub fn covers(&self, value: f64, k: f64) -> bool {
        self.z_score(value) <= k
    }
}

/// Estimates of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    /// Ergodic capacity in bit/s/Hz.
    pub capacity: Estimate,
    /// Average transferred energy.
    pub energy: Estimate,
    /// Outage probability.
    pub outage: Estimate,
    /// How often each relay was selected.
    pub selection_counts: Vec<u64>,
    /// Frames in outage.
    pub outage_events: u64,
    /// Set when fewer than [`MIN_OUTAGE_EVENTS`] outages were observed.
    pub low_confidence: bool,
}

#[derive(Debug, Clone, Default)]
struct Sums {
    capacity: i128,
    capacity_sq: i128,
    energy: i128,
    energy_sq: i128,
    outages: u64,
    counts: Vec<u64>,
}

impl Sums {
    fn merge(mut self, other: &Sums) -> Sums {
        self.capacity += other.capacity;
        self.capacity_sq += other.capacity_sq;
        self.energy += other.energy;
        self.energy_sq += other.energy_sq;
        self.outages += other.outages;
        if self.counts.len() < other.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self
    }
}

#[inline]
fn fixed(x: f64) -> i128 {
    (x * SCALE).round() as i128
}

fn estimate(sum: i128, sum_sq: i128, n: u64) -> Estimate {
    let nf = n as f64;
    let s1 = sum as f64 / SCALE;
    let s2 = sum_sq as f64 / SCALE;
    let mean = s1 / nf;
    let var = if n > 1 { ((s2 - s1 * mean) / (nf - 1.0)).max(0.0) } else { 0.0 };
    Estimate {
        mean,
        std_error: (var / nf).sqrt(),
        n,
    }
}

fn words_per_frame(n_relays: usize) -> u128 {
    // Each f64 draw consumes two 32-bit words of the ChaCha stream.
    2 * (3 * n_relays as u128 + 1)
}

fn stream_at(seed: u64, n_relays: usize, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(words_per_frame(n_relays) * frame as u128);
    rng
}

/// Frame `k` of the stream keyed by `seed`, with its coin.
pub fn frame_at(config: &SystemConfig<f64>, seed: u64, k: u64) -> (ChannelFrame<f64>, f64) {
    let mut rng = stream_at(seed, config.n_relays(), k);
    let mut frame = ChannelFrame::zeroed(config.n_relays());
    frame.resample(config, &mut rng);
    let coin = rng.random::<f64>();
    (frame, coin)
}

fn run_batch(config: &SystemConfig<f64>, scheme: &SchemeParam<f64>, seed: u64, start: u64, end: u64) -> Sums {
    let n = config.n_relays();
    let mut rng = stream_at(seed, n, start);
    let mut frame = ChannelFrame::zeroed(n);
    let threshold = config.outage_threshold();
    let energy_scale = config.mean_energy().recip();
    let mut sums = Sums {
        counts: vec![0; n],
        ..Sums::default()
    };
    for _ in start..end {
        frame.resample(config, &mut rng);
        let coin = rng.random::<f64>();
        let s = scheme.select(&frame, coin, threshold);
        let snr = frame.snr()[s];
        let capacity = half_log2_1p(snr);
        let energy = frame.energy()[s] * energy_scale;
        sums.capacity += fixed(capacity);
        sums.capacity_sq += fixed(capacity * capacity);
        sums.energy += fixed(energy);
        sums.energy_sq += fixed(energy * energy);
        sums.outages += u64::from(snr < threshold);
        sums.counts[s] += 1;
    }
    sums
}

/// Simulates `mc.n_frames()` frames of `scheme` on `config`.
///
/// Batches run on the current rayon pool. The result is bit-identical for
/// a given `(config, scheme, seed, n_frames)` whatever the batch size or
/// thread count.
pub fn run(config: &SystemConfig<f64>, scheme: &SchemeParam<f64>, mc: &MonteCarloConfig) -> Result<SimulationResult> {
    scheme.validate(config.n_relays())?;
    let n = mc.n_frames;
    let batches = n.div_ceil(mc.batch_size);
    let partial: Vec<Sums> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let start = b * mc.batch_size;
            let end = (start + mc.batch_size).min(n);
            run_batch(config, scheme, mc.seed, start, end)
        })
        .collect();
    let total = partial.iter().fold(Sums::default(), Sums::merge);

    let mut energy = estimate(total.energy, total.energy_sq, n);
    energy.mean *= config.mean_energy();
    energy.std_error *= config.mean_energy();
    let nf = n as f64;
    let p = total.outages as f64 / nf;
    let outage_var = if n > 1 { p * (1.0 - p) * nf / (nf - 1.0) } else { 0.0 };
    Ok(SimulationResult {
        capacity: estimate(total.capacity, total.capacity_sq, n),
        energy,
        outage: Estimate {
            mean: p,
            std_error: (outage_var / nf).sqrt(),
            n,
        },
        selection_counts: total.counts,
        outage_events: total.outages,
        low_confidence: total.outages < MIN_OUTAGE_EVENTS,
    })
}
