//! Table builders behind each subcommand.

use relay_tradeoff::closedform::{
    c_tc, c_ts, c_wd, delta_range_outage, energy_from_delta, mu_from_energy, nu_from_energy, outage_tc, outage_ts,
    outage_wd, tau_from_energy,
};
use relay_tradeoff::frontier::{capacity_frontier, outage_frontier, solve_zeta_for_energy, uniform_grid};
use relay_tradeoff::scalar::db_to_linear;
use relay_tradeoff::schemes::{ParetoMetric, SchemeParam, Weight};
use relay_tradeoff::simulate::{run, MonteCarloConfig, SimulationResult};
use relay_tradeoff::{Config, Scheme};

use crate::error::{CliError, Result};
use crate::table::{Cell, PlotHints, Table};

/// Monte-Carlo settings for overlays and single runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McSettings {
    pub frames: u64,
    pub seed: u64,
    pub batch_size: Option<u64>,
}

impl McSettings {
    /// Settings for the `index`-th run of a command. Runs use consecutive
    /// seeds so they are independent of each other.
    fn config(&self, index: u64) -> Result<MonteCarloConfig> {
        let seed = self.seed.wrapping_add(index);
        match self.batch_size {
            Some(b) => MonteCarloConfig::with_batch_size(self.frames, seed, b),
            None => MonteCarloConfig::new(self.frames, seed),
        }
        .map_err(CliError::input)
    }
}

/// Abscissa of the capacity tradeoff plot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum XAxis {
    #[default]
    Energy,
    Delta,
}

fn require_tradeoff(config: &Config) -> Result<()> {
    if config.n_relays() < 2 {
        return Err(CliError::Usage("a tradeoff needs at least 2 relays".into()));
    }
    Ok(())
}

fn check_points(points: usize) -> Result<()> {
    if points < 2 {
        return Err(CliError::Usage(format!("grid needs at least 2 points, got {points}")));
    }
    Ok(())
}

/// Checks a list of tradeoff factors and returns it sorted without
/// duplicates.
pub fn normalize_deltas(deltas: &[f64]) -> Result<Vec<f64>> {
    if deltas.is_empty() {
        return Err(CliError::Usage("no tradeoff factors given".into()));
    }
    if let Some(d) = deltas.iter().find(|d| !(0.0..=1.0).contains(*d)) {
        return Err(CliError::Usage(format!("tradeoff factor {d} outside [0, 1]")));
    }
    let mut out = deltas.to_vec();
    out.sort_by(f64::total_cmp);
    out.dedup();
    Ok(out)
}

/// Uniform grid in dB from `from` to `to` (inclusive) with spacing `step`.
pub fn db_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !(from.is_finite() && to.is_finite() && step > 0.0 && to >= from) {
        return Err(CliError::Usage(format!("invalid dB grid {from}:{step}:{to}")));
    }
    let n = ((to - from) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| from + step * i as f64).collect())
}

fn delta_label(delta: f64) -> String {
    format!("d{delta}")
}

/// Scheme parameter reaching tradeoff factor `delta`; `zeta` is the
/// frontier weight for the Pareto rule.
fn scheme_at(config: &Config, delta: f64, kind: &str, zeta: f64) -> Result<Scheme> {
    let e = energy_from_delta(config, delta)?;
    Ok(match kind {
        "ts" => SchemeParam::TimeSharing { mu: mu_from_energy(config, e)? },
        "tc" => SchemeParam::ThresholdChecking { tau: tau_from_energy(config, e)? },
        "wd" => SchemeParam::WeightedDifference { nu: Weight::new(nu_from_energy(config, e)?)? },
        _ => SchemeParam::ParetoOptimal {
            zeta: Weight::new(zeta)?,
            metric: ParetoMetric::Capacity,
        },
    })
}

/// Capacity against energy on a uniform tradeoff-factor grid, with
/// optional Monte-Carlo overlays.
pub fn tradeoff_capacity(config: &Config, points: usize, x_axis: XAxis, mc: Option<McSettings>) -> Result<Table> {
    require_tradeoff(config)?;
    check_points(points)?;
    let two = config.n_relays() == 2;
    let grid = uniform_grid(0.0, points);
    let frontier = if two { Some(capacity_frontier(config, &grid)?) } else { None };
    let kinds: &[&str] = if two { &["ts", "tc", "wd", "pareto"] } else { &["ts", "tc"] };

    let mut header = vec!["delta".to_string(), "energy".to_string()];
    header.extend(kinds.iter().map(|k| format!("c_{k}")));
    if mc.is_some() {
        for k in kinds {
            header.extend([
                format!("mc_c_{k}"),
                format!("mc_c_{k}_se"),
                format!("mc_energy_{k}"),
                format!("mc_energy_{k}_se"),
            ]);
        }
    }
    let plot = PlotHints {
        x_column: if x_axis == XAxis::Delta { 1 } else { 2 },
        x_label: if x_axis == XAxis::Delta { "tradeoff factor".into() } else { "average energy transfer".into() },
        y_label: "ergodic capacity (bit/s/Hz)".into(),
        log_y: false,
    };
    let mut table = Table::new(header, plot);
    for (i, &delta) in grid.iter().enumerate() {
        let e = energy_from_delta(config, delta)?;
        let mut row: Vec<Cell> = vec![delta.into(), e.into(), c_ts(config, e)?.into(), c_tc(config, e)?.into()];
        let zeta = frontier.as_ref().map_or(0.0, |f| f.weights[i]);
        if let Some(f) = &frontier {
            row.push(c_wd(config, e)?.into());
            row.push(f.points[i].value.into());
        }
        if let Some(settings) = mc {
            for (k, kind) in kinds.iter().enumerate() {
                let scheme = scheme_at(config, delta, kind, zeta)?;
                let r = run(config, &scheme, &settings.config((i * kinds.len() + k) as u64)?)?;
                row.extend([
                    r.capacity.mean.into(),
                    r.capacity.std_error.into(),
                    r.energy.mean.into(),
                    r.energy.std_error.into(),
                ]);
            }
        }
        table.push(row);
    }
    Ok(table)
}

/// Probability of no outage against the tradeoff factor. The Pareto
/// column is empty below its lowest reachable tradeoff factor, which is
/// added to the grid.
pub fn tradeoff_outage(config: &Config, points: usize) -> Result<Table> {
    require_tradeoff(config)?;
    check_points(points)?;
    let two = config.n_relays() == 2;
    let mut grid = uniform_grid(0.0, points);
    let mut pareto = Vec::new();
    if two {
        let (lo, _) = delta_range_outage(config)?;
        if !grid.iter().any(|&d| (d - lo).abs() < 1e-12) {
            grid.push(lo);
            grid.sort_by(f64::total_cmp);
        }
        let reachable: Vec<f64> = grid.iter().map(|&d| if (d - lo).abs() < 1e-12 { lo } else { d }).collect();
        grid = reachable;
        let upper: Vec<f64> = grid.iter().copied().filter(|&d| d >= lo).collect();
        pareto = outage_frontier(config, &upper)?.points.into_iter().map(|p| p.value).collect();
    }
    let mut header: Vec<String> = ["delta", "energy", "noout_ts", "noout_tc"].map(String::from).into();
    if two {
        header.extend(["noout_wd".to_string(), "noout_pareto".to_string()]);
    }
    let plot = PlotHints {
        x_column: 1,
        x_label: "tradeoff factor".into(),
        y_label: "probability of no outage".into(),
        log_y: false,
    };
    let mut table = Table::new(header, plot);
    let first_pareto = grid.len() - pareto.len();
    for (i, &delta) in grid.iter().enumerate() {
        let mut row: Vec<Cell> = vec![
            delta.into(),
            energy_from_delta(config, delta)?.into(),
            (1.0 - outage_ts(config, delta)?).into(),
            (1.0 - outage_tc(config, delta)?).into(),
        ];
        if two {
            row.push((1.0 - outage_wd(config, delta)?).into());
            row.push(i.checked_sub(first_pareto).map(|j| pareto[j]).into());
        }
        table.push(row);
    }
    Ok(table)
}

/// Capacity of every scheme against the mean SNR in dB, one column per
/// scheme and tradeoff factor.
pub fn capacity_vs_snr(config: &Config, snr_db: &[f64], deltas: &[f64]) -> Result<Table> {
    require_tradeoff(config)?;
    let deltas = normalize_deltas(deltas)?;
    let two = config.n_relays() == 2;
    let kinds: &[&str] = if two { &["ts", "tc", "wd", "pareto"] } else { &["ts", "tc"] };
    let mut header = vec!["mean_snr_db".to_string()];
    for &d in &deltas {
        header.extend(kinds.iter().map(|k| format!("c_{k}_{}", delta_label(d))));
    }
    let plot = PlotHints {
        x_column: 1,
        x_label: "average SNR per link (dB)".into(),
        y_label: "ergodic capacity (bit/s/Hz)".into(),
        log_y: false,
    };
    let mut table = Table::new(header, plot);
    for &db in snr_db {
        let c = config.with_mean_snr(db_to_linear(db)).map_err(CliError::input)?;
        let frontier = if two { Some(capacity_frontier(&c, &deltas)?) } else { None };
        let mut row: Vec<Cell> = vec![db.into()];
        for (i, &delta) in deltas.iter().enumerate() {
            let e = energy_from_delta(&c, delta)?;
            row.push(c_ts(&c, e)?.into());
            row.push(c_tc(&c, e)?.into());
            if let Some(f) = &frontier {
                row.push(c_wd(&c, e)?.into());
                row.push(f.points[i].value.into());
            }
        }
        table.push(row);
    }
    Ok(table)
}

/// Outage probability against `γ̄/γ_th` in dB. Tradeoff factors below the
/// Pareto rule's reachable range use the lowest reachable one.
pub fn outage_vs_snr(config: &Config, ratio_db: &[f64], deltas: &[f64]) -> Result<Table> {
    require_tradeoff(config)?;
    let deltas = normalize_deltas(deltas)?;
    let two = config.n_relays() == 2;
    let kinds: &[&str] = if two { &["ts", "tc", "wd", "pareto"] } else { &["ts", "tc"] };
    let mut header = vec!["ratio_db".to_string()];
    for &d in &deltas {
        header.extend(kinds.iter().map(|k| format!("out_{k}_{}", delta_label(d))));
    }
    let plot = PlotHints {
        x_column: 1,
        x_label: "normalized average SNR per link (dB)".into(),
        y_label: "outage probability".into(),
        log_y: true,
    };
    let mut table = Table::new(header, plot);
    for &db in ratio_db {
        let c = config
            .with_mean_snr(db_to_linear(db) * config.outage_threshold())
            .map_err(CliError::input)?;
        let mut row: Vec<Cell> = vec![db.into()];
        for &delta in &deltas {
            row.push(outage_ts(&c, delta)?.into());
            row.push(outage_tc(&c, delta)?.into());
            if two {
                row.push(outage_wd(&c, delta)?.into());
                let lo = delta_range_outage(&c)?.0;
                let f = outage_frontier(&c, &[delta.max(lo)])?;
                row.push((1.0 - f.points[0].value).into());
            }
        }
        table.push(row);
    }
    Ok(table)
}

/// Parameter of a single Monte-Carlo run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeChoice {
    TimeSharing,
    ThresholdChecking,
    WeightedDifference,
    Pareto(ParetoMetric),
}

/// How the scheme parameter was specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamSpec {
    /// The native parameter (μ, τ, ν or ζ).
    Native(f64),
    /// A tradeoff factor, converted with the scheme's inversion.
    Delta(f64),
}

/// Resolves the scheme for a single run and validates it against `config`.
pub fn resolve_scheme(config: &Config, choice: SchemeChoice, param: ParamSpec) -> Result<Scheme> {
    let scheme = match param {
        ParamSpec::Native(v) => match choice {
            SchemeChoice::TimeSharing => SchemeParam::TimeSharing { mu: v },
            SchemeChoice::ThresholdChecking => SchemeParam::ThresholdChecking { tau: v },
            SchemeChoice::WeightedDifference => SchemeParam::WeightedDifference {
                nu: Weight::new(v).map_err(CliError::input)?,
            },
            SchemeChoice::Pareto(metric) => SchemeParam::ParetoOptimal {
                zeta: Weight::new(v).map_err(CliError::input)?,
                metric,
            },
        },
        ParamSpec::Delta(delta) => {
            if !(0.0..=1.0).contains(&delta) {
                return Err(CliError::Usage(format!("tradeoff factor {delta} outside [0, 1]")));
            }
            require_tradeoff(config)?;
            if matches!(choice, SchemeChoice::WeightedDifference | SchemeChoice::Pareto(_)) && config.n_relays() != 2 {
                return Err(CliError::Usage("weighted difference and Pareto selection need exactly 2 relays".into()));
            }
            let e = energy_from_delta(config, delta)?;
            match choice {
                SchemeChoice::TimeSharing => scheme_at(config, delta, "ts", 0.0)?,
                SchemeChoice::ThresholdChecking => scheme_at(config, delta, "tc", 0.0)?,
                SchemeChoice::WeightedDifference => scheme_at(config, delta, "wd", 0.0)?,
                SchemeChoice::Pareto(metric) => {
                    let zeta = if delta >= 1.0 {
                        f64::INFINITY
                    } else {
                        solve_zeta_for_energy(config, e, metric).map_err(|err| match err {
                            relay_tradeoff::Error::Infeasible { .. } => CliError::input(err),
                            other => other.into(),
                        })?
                    };
                    SchemeParam::ParetoOptimal {
                        zeta: Weight::new(zeta)?,
                        metric,
                    }
                }
            }
        }
    };
    scheme.validate(config.n_relays()).map_err(CliError::input)?;
    Ok(scheme)
}

fn scheme_row(scheme: &Scheme) -> (String, f64, String) {
    match *scheme {
        SchemeParam::TimeSharing { mu } => ("ts".into(), mu, String::new()),
        SchemeParam::ThresholdChecking { tau } => ("tc".into(), tau, String::new()),
        SchemeParam::WeightedDifference { nu } => ("wd".into(), nu.value(), String::new()),
        SchemeParam::ParetoOptimal { zeta, metric } => {
            let m = match metric {
                ParetoMetric::Capacity => "capacity",
                ParetoMetric::OutageIndicator => "outage",
            };
            ("pareto".into(), zeta.value(), m.into())
        }
    }
}

/// One simulation row with all estimates and the run's identity.
pub fn montecarlo(config: &Config, scheme: &Scheme, mc: McSettings) -> Result<Table> {
    let r: SimulationResult = run(config, scheme, &mc.config(0)?)?;
    let (name, param, metric) = scheme_row(scheme);
    let mut header: Vec<String> = [
        "scheme",
        "param",
        "metric",
        "n_relays",
        "mean_snr",
        "mean_energy",
        "outage_threshold",
        "seed",
        "frames",
        "capacity",
        "capacity_se",
        "energy",
        "energy_se",
        "outage",
        "outage_se",
        "outage_events",
        "low_confidence",
    ]
    .map(String::from)
    .into();
    header.extend((0..config.n_relays()).map(|i| format!("count_{i}")));
    let mut row = vec![
        Cell::Text(name),
        param.into(),
        Cell::Text(metric),
        (config.n_relays() as u64).into(),
        config.mean_snr().into(),
        config.mean_energy().into(),
        config.outage_threshold().into(),
        mc.seed.into(),
        mc.frames.into(),
        r.capacity.mean.into(),
        r.capacity.std_error.into(),
        r.energy.mean.into(),
        r.energy.std_error.into(),
        r.outage.mean.into(),
        r.outage.std_error.into(),
        r.outage_events.into(),
        Cell::Text(r.low_confidence.to_string()),
    ];
    row.extend(r.selection_counts.iter().map(|&c| Cell::Int(c)));
    let mut table = Table::new(header, PlotHints::default());
    table.push(row);
    Ok(table)
}
