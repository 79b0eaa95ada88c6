//! Command-line front end: every subcommand builds a [`Table`] and writes
//! it as CSV.

pub mod args;
pub mod commands;
pub mod error;
pub mod table;

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use relay_tradeoff::model::{threshold_from_rate, ConfigSource};
use relay_tradeoff::schemes::ParetoMetric;
use relay_tradeoff::Config;

use args::{Cli, Command, McArgs, MetricArg, OutputArgs, Preset, SchemeArg, SystemArgs, XAxisArg};
use commands::{McSettings, ParamSpec, SchemeChoice, XAxis};
pub use error::{CliError, Result};
pub use table::Table;

/// Frames per Monte-Carlo run when `--frames` is not given.
pub const DEFAULT_FRAMES: u64 = 1_000_000;
/// Frames per overlay point when `--frames` is not given.
pub const DEFAULT_OVERLAY_FRAMES: u64 = 100_000;
const DEFAULT_SEED: u64 = 1;

fn defaults(n_relays: usize, mean_snr_db: f64) -> ConfigSource {
    ConfigSource {
        n_relays: Some(n_relays),
        mean_snr_db: Some(mean_snr_db),
        ..ConfigSource::default()
    }
}

/// Merges command defaults, the configuration file and the flags, in
/// increasing priority.
fn load_source(base: ConfigSource, args: &SystemArgs) -> Result<ConfigSource> {
    let mut source = base;
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        source = source.overlay(&ConfigSource::parse(&text).map_err(CliError::input)?);
    }
    let flags = ConfigSource {
        n_relays: args.n_relays,
        mean_snr_db: args.mean_snr_db,
        mean_snr: args.mean_snr,
        mean_energy: args.mean_energy,
        beta: args.beta,
        noise_power: args.noise_power,
        outage_threshold: args.outage_threshold,
        rate: args.rate,
        seed: None,
    };
    Ok(source.overlay(&flags))
}

fn resolve(source: &ConfigSource) -> Result<Config> {
    source.resolve().map_err(CliError::input)
}

fn mc_settings(args: &McArgs, source: &ConfigSource, default_frames: u64) -> Result<McSettings> {
    let frames = args.frames.unwrap_or(default_frames);
    if frames == 0 {
        return Err(CliError::Usage("--frames must be at least 1".into()));
    }
    if let Some(b) = args.batch_size {
        if b == 0 || b > frames {
            return Err(CliError::Usage(format!("--batch-size must lie in [1, {frames}], got {b}")));
        }
    }
    Ok(McSettings {
        frames,
        seed: args.seed.or(source.seed).unwrap_or(DEFAULT_SEED),
        batch_size: args.batch_size,
    })
}

fn with_threads<T: Send>(threads: Option<usize>, job: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match threads {
        None => job(),
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {n} threads: {e}")))?
            .install(job),
    }
}

fn write_output(table: &Table, out: &OutputArgs) -> Result<()> {
    match &out.output {
        None => table.write_csv(io::stdout().lock()),
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            table.write_csv(io::BufWriter::new(file))?;
            if out.gnuplot {
                let script = path.with_extension("gp");
                fs::File::create(&script)?.write_all(table.gnuplot_script(Path::new(path)).as_bytes())?;
            }
            Ok(())
        }
    }
}

const FIG6_DELTAS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const OUTAGE_DELTAS: [f64; 5] = [0.0, 0.01, 0.1, 0.5, 1.0];

/// Runs a parsed command line.
pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::TradeoffCapacity(a) => {
            let snr_db = if a.x_axis == XAxisArg::Delta { 10.0 } else { 20.0 };
            let source = load_source(defaults(2, snr_db), &a.system)?;
            let config = resolve(&source)?;
            let mc = a
                .with_mc
                .then(|| mc_settings(&a.mc, &source, DEFAULT_OVERLAY_FRAMES))
                .transpose()?;
            let x = if a.x_axis == XAxisArg::Delta { XAxis::Delta } else { XAxis::Energy };
            let table = with_threads(a.mc.threads, || commands::tradeoff_capacity(&config, a.points, x, mc))?;
            write_output(&table, &a.output)
        }
        Command::TradeoffOutage(a) => {
            let base = ConfigSource {
                n_relays: Some(2),
                ..ConfigSource::default()
            };
            let mut source = load_source(base, &a.system)?;
            if source.mean_snr_db.is_none() && source.mean_snr.is_none() {
                // γ̄ = 2γ_th/ln 2 puts the lowest Pareto tradeoff factor at 1/2.
                let th = match (source.outage_threshold, source.rate) {
                    (Some(th), _) => th,
                    (None, Some(rate)) => threshold_from_rate(rate),
                    (None, None) => 1.0,
                };
                source.mean_snr = Some(2.0 * th / std::f64::consts::LN_2);
            }
            let config = resolve(&source)?;
            let table = with_threads(a.mc.threads, || commands::tradeoff_outage(&config, a.points))?;
            write_output(&table, &a.output)
        }
        Command::CapacityVsSnr(a) => {
            let source = load_source(defaults(2, 0.0), &a.system)?;
            let config = resolve(&source)?;
            let grid = commands::db_grid(a.from_db.unwrap_or(0.0), a.to_db.unwrap_or(30.0), a.step_db)?;
            let deltas = a.deltas.clone().unwrap_or(FIG6_DELTAS.to_vec());
            let table = with_threads(a.mc.threads, || commands::capacity_vs_snr(&config, &grid, &deltas))?;
            write_output(&table, &a.output)
        }
        Command::OutageVsSnr(a) => {
            let source = load_source(defaults(2, 0.0), &a.system)?;
            let config = resolve(&source)?;
            let grid = commands::db_grid(a.from_db.unwrap_or(0.0), a.to_db.unwrap_or(40.0), a.step_db)?;
            let deltas = a.deltas.clone().unwrap_or(OUTAGE_DELTAS.to_vec());
            let table = with_threads(a.mc.threads, || commands::outage_vs_snr(&config, &grid, &deltas))?;
            write_output(&table, &a.output)
        }
        Command::Montecarlo(a) => {
            let source = load_source(defaults(2, 10.0), &a.system)?;
            let config = resolve(&source)?;
            let mc = mc_settings(&a.mc, &source, DEFAULT_FRAMES)?;
            let (choice, native) = match a.scheme {
                SchemeArg::Ts => (SchemeChoice::TimeSharing, a.mu),
                SchemeArg::Tc => (SchemeChoice::ThresholdChecking, a.tau),
                SchemeArg::Wd => (SchemeChoice::WeightedDifference, a.nu),
                SchemeArg::Pareto => {
                    let metric = match a.metric {
                        MetricArg::Capacity => ParetoMetric::Capacity,
                        MetricArg::Outage => ParetoMetric::OutageIndicator,
                    };
                    (SchemeChoice::Pareto(metric), a.zeta)
                }
            };
            let param = match (native, a.delta) {
                (Some(v), None) => ParamSpec::Native(v),
                (None, Some(d)) => ParamSpec::Delta(d),
                _ => {
                    return Err(CliError::Usage(
                        "give the scheme parameter (--mu, --tau, --nu or --zeta) or --delta".into(),
                    ))
                }
            };
            let table = with_threads(a.mc.threads, || {
                let scheme = commands::resolve_scheme(&config, choice, param)?;
                commands::montecarlo(&config, &scheme, mc)
            })?;
            write_output(&table, &a.output)
        }
        Command::Figure(a) => {
            let table = with_threads(a.mc.threads, || figure(a.preset, a.with_mc, &a.mc))?;
            write_output(&table, &a.output)
        }
    }
}

/// Table of one preset figure.
pub fn figure(preset: Preset, with_mc: bool, mc: &McArgs) -> Result<Table> {
    let source = match preset {
        Preset::Fig3 => defaults(2, 20.0),
        Preset::Fig4 | Preset::Fig6 | Preset::Fig7 => defaults(2, 10.0),
        Preset::Fig5 => ConfigSource {
            n_relays: Some(2),
            mean_snr: Some(2.0 / std::f64::consts::LN_2),
            ..ConfigSource::default()
        },
        Preset::Fig8 => defaults(3, 10.0),
    };
    let config = resolve(&source)?;
    if with_mc && !matches!(preset, Preset::Fig3 | Preset::Fig4) {
        return Err(CliError::Usage("--with-mc applies to fig3 and fig4 only".into()));
    }
    let mc = with_mc
        .then(|| mc_settings(mc, &source, DEFAULT_OVERLAY_FRAMES))
        .transpose()?;
    match preset {
        Preset::Fig3 => commands::tradeoff_capacity(&config, 21, XAxis::Energy, mc),
        Preset::Fig4 => commands::tradeoff_capacity(&config, 21, XAxis::Delta, mc),
        Preset::Fig5 => commands::tradeoff_outage(&config, 21),
        Preset::Fig6 => commands::capacity_vs_snr(&config, &commands::db_grid(0.0, 30.0, 1.0)?, &FIG6_DELTAS),
        Preset::Fig7 | Preset::Fig8 => {
            commands::outage_vs_snr(&config, &commands::db_grid(0.0, 40.0, 1.0)?, &OUTAGE_DELTAS)
        }
    }
}
