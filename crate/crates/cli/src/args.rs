use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "relay-tradeoff", version, about = "Capacity and energy-transfer tradeoffs of relay selection")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ergodic capacity of every scheme against the energy transfer.
    TradeoffCapacity(TradeoffCapacityArgs),
    /// Probability of no outage of every scheme against the tradeoff factor.
    TradeoffOutage(TradeoffOutageArgs),
    /// Ergodic capacity against the mean SNR per link.
    CapacityVsSnr(SweepArgs),
    /// Outage probability against the mean SNR normalized by the threshold.
    OutageVsSnr(SweepArgs),
    /// Monte-Carlo estimates for one scheme.
    Montecarlo(MonteCarloArgs),
    /// Reproduces one figure with its default settings.
    Figure(FigureArgs),
}

/// System parameters. Flags override the configuration file.
#[derive(Debug, Clone, Default, Args)]
pub struct SystemArgs {
    /// TOML file with the system parameters.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Number of candidate relays.
    #[arg(long, short = 'n')]
    pub n_relays: Option<usize>,
    /// Mean SNR per link in dB.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "mean_snr")]
    pub mean_snr_db: Option<f64>,
    /// Mean SNR per link as a linear ratio.
    #[arg(long)]
    pub mean_snr: Option<f64>,
    /// Mean harvestable energy per relay.
    #[arg(long, conflicts_with_all = ["beta", "noise_power"])]
    pub mean_energy: Option<f64>,
    /// Energy absorption coefficient, used with --noise-power.
    #[arg(long, requires = "noise_power")]
    pub beta: Option<f64>,
    /// Noise power, used with --beta.
    #[arg(long, requires = "beta")]
    pub noise_power: Option<f64>,
    /// Outage threshold SNR (linear).
    #[arg(long, conflicts_with = "rate")]
    pub outage_threshold: Option<f64>,
    /// Target rate in bit/s/Hz; sets the threshold to 2^(2·rate) - 1.
    #[arg(long)]
    pub rate: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    /// Output CSV file; standard output when omitted.
    #[arg(long, short = 'o', value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV.
    #[arg(long, requires = "output")]
    pub gnuplot: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct McArgs {
    /// Master seed of the random stream.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Frames per Monte-Carlo run.
    #[arg(long)]
    pub frames: Option<u64>,
    /// Frames per work unit; does not affect the results.
    #[arg(long)]
    pub batch_size: Option<u64>,
    /// Worker threads; does not affect the results.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum XAxisArg {
    Energy,
    Delta,
}

#[derive(Debug, Clone, Args)]
pub struct TradeoffCapacityArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Points of the uniform tradeoff-factor grid.
    #[arg(long, default_value_t = 21)]
    pub points: usize,
    /// Plot abscissa. With `delta` the default mean SNR is 10 dB instead of 20 dB.
    #[arg(long, value_enum, default_value_t = XAxisArg::Energy)]
    pub x_axis: XAxisArg,
    /// Add Monte-Carlo estimates with standard errors.
    #[arg(long)]
    pub with_mc: bool,
    #[command(flatten)]
    pub mc: McArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TradeoffOutageArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Points of the uniform tradeoff-factor grid.
    #[arg(long, default_value_t = 21)]
    pub points: usize,
    #[command(flatten)]
    pub mc: McArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// First abscissa in dB.
    #[arg(long, allow_hyphen_values = true)]
    pub from_db: Option<f64>,
    /// Last abscissa in dB.
    #[arg(long, allow_hyphen_values = true)]
    pub to_db: Option<f64>,
    /// Abscissa spacing in dB.
    #[arg(long, default_value_t = 1.0)]
    pub step_db: f64,
    /// Tradeoff factors, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub deltas: Option<Vec<f64>>,
    #[command(flatten)]
    pub mc: McArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    /// Time sharing, parameter --mu.
    Ts,
    /// Threshold checking, parameter --tau.
    Tc,
    /// Weighted difference, parameter --nu.
    Wd,
    /// Pareto-optimal rule, parameter --zeta and --metric.
    Pareto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Capacity,
    Outage,
}

#[derive(Debug, Clone, Args)]
pub struct MonteCarloArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    /// Time-sharing probability of max-SNR selection.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    /// Threshold-checking SNR threshold; `inf` selects by energy only.
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<f64>,
    /// Weighted-difference weight; `inf` selects by energy only.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    /// Pareto weight; `inf` selects by energy only.
    #[arg(long, allow_hyphen_values = true)]
    pub zeta: Option<f64>,
    /// Tradeoff factor, converted to the scheme parameter.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["mu", "tau", "nu", "zeta"])]
    pub delta: Option<f64>,
    /// Metric of the Pareto rule.
    #[arg(long, value_enum, default_value_t = MetricArg::Capacity)]
    pub metric: MetricArg,
    #[command(flatten)]
    pub mc: McArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Capacity against energy at 20 dB.
    Fig3,
    /// Capacity against the tradeoff factor at 10 dB.
    Fig4,
    /// No-outage probability against the tradeoff factor.
    Fig5,
    /// Capacity against the mean SNR.
    Fig6,
    /// Outage against the normalized SNR, two relays.
    Fig7,
    /// Outage against the normalized SNR, three relays.
    Fig8,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    #[arg(long, value_enum)]
    pub preset: Preset,
    /// Add Monte-Carlo estimates (capacity tradeoff figures only).
    #[arg(long)]
    pub with_mc: bool,
    #[command(flatten)]
    pub mc: McArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}
