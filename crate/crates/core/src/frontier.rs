//! Pareto frontiers of the two-relay network.
//!
//! The capacity frontier has no closed form. Each point is the pair of
//! expectations `(E[ε_s], E[½log₂(1+γ_s)])` under the Lagrangian rule, which
//! reduces to a double integral over the SNRs once the energies are
//! integrated out: with `ΔF ≥ 0` the metric gap between the stronger and the
//! weaker relay and `c = ΔF/(ζε̄)`, the weaker relay is selected with
//! probability `e^{-c}/2` and the selected energy has conditional mean
//! `ε̄(1 + e^{-c}(1 + c)/2)`. Writing the SNRs as the minimum (rate `4/γ̄`)
//! plus an independent gap (rate `2/γ̄`) turns the remaining integral into
//! `∫∫ e^{-y-z} h(y, z) dy dz`, computed with nested adaptive Gauss–Kronrod.
//!
//! The outage frontier is assembled from its closed forms.

use rayon::prelude::*;

use crate::closedform::{
    c_min, delta_range_outage, energy_from_delta, pareto_no_outage, pareto_outage_energy, TradeoffPoint,
};
use crate::error::{Error, Result};
use crate::model::{half_log2_1p, SystemConfig};
use crate::quadrature::integrate;
use crate::schemes::{ParetoMetric, Weight};

/// Absolute accuracy certified for every quadrature point, on both
/// coordinates.
pub const POINT_TOLERANCE: f64 = 1e-4;

/// Relative tolerance, in units of `ε̄`, of the weight search.
pub const ZETA_TOLERANCE: f64 = 1e-4;

/// Weight-search tolerance used when assembling curves.
const CURVE_ZETA_TOLERANCE: f64 = 1e-8;

/// Integration range of the unit-exponential variables.
const TRUNCATION: f64 = 50.0;

const INNER_TOLERANCE: f64 = 1e-11;
const OUTER_TOLERANCE: f64 = 1e-10;
const MAX_PIECES: usize = 200;

/// How the points of a frontier were computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontierMethod {
    /// Deterministic adaptive quadrature.
    Quadrature,
    /// Exact closed-form expressions.
    ClosedForm,
}

/// Points of a Pareto frontier ordered by increasing energy.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontierCurve {
    pub points: Vec<TradeoffPoint<f64>>,
    /// Weight `ζ` behind each point; `+∞` for energy-only selection.
    pub weights: Vec<f64>,
    pub method: FrontierMethod,
    /// Absolute accuracy of the point coordinates.
    pub tolerance: f64,
}

/// Expectations under a two-relay policy, with their certified error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolicyExpectation {
    pub capacity: f64,
    pub energy: f64,
    /// Bound on the absolute quadrature and truncation error of either value.
    pub error: f64,
}

/// Expected capacity and energy of the two-relay rule "relay 1 when
/// `score(γ₁) - score(γ₂) > w(ε₂ - ε₁)`, relay 2 when `<`", for a
/// nondecreasing `score`. Equality is a null event unless the score is
/// flat, and then the relay with more energy is taken.
///
/// With `score = ½log₂(1 + γ)` this is the capacity Pareto rule; with
/// `score = γ` it is weighted-difference selection.
pub fn difference_policy_expectations(
    config: &SystemConfig<f64>,
    score: impl Fn(f64) -> f64 + Sync,
    weight: Weight<f64>,
) -> Result<PolicyExpectation> {
    if config.n_relays() != 2 {
        return Err(Error::Dimension {
            op: "difference_policy_expectations",
            expected: 2,
            actual: config.n_relays(),
        });
    }
    let mean_energy = config.mean_energy();
    let zeta = match weight {
        Weight::EnergyOnly => {
            return Ok(PolicyExpectation {
                capacity: c_min(config)?,
                energy: 1.5 * mean_energy,
                error: 0.0,
            })
        }
        Weight::Finite(z) if z.is_finite() && z >= 0.0 => z,
        Weight::Finite(z) => {
            return Err(Error::domain(
                "difference_policy_expectations",
                format!("weight must be finite and >= 0, got {z}"),
            ))
        }
    };
    let quarter = config.mean_snr() / 4.0;
    let half = config.mean_snr() / 2.0;

    let conditional = |y: f64, z: f64| -> [f64; 2] {
        let weak = quarter * y;
        let strong = weak + half * z;
        let gap = score(strong) - score(weak);
        let c = if gap <= 0.0 {
            0.0
        } else if zeta == 0.0 {
            f64::INFINITY
        } else {
            gap / (zeta * mean_energy)
        };
        let switch = if c.is_infinite() { 0.0 } else { 0.5 * (-c).exp() };
        let c_strong = half_log2_1p(strong);
        let c_weak = half_log2_1p(weak);
        let capacity = c_strong - (c_strong - c_weak) * switch;
        let energy = mean_energy * (1.0 + switch * (1.0 + if c.is_infinite() { 0.0 } else { c }));
        let density = (-y - z).exp();
        [density * capacity, density * energy]
    };

    let outer = integrate(
        |y| {
            let inner = integrate(|z| conditional(y, z), 0.0, TRUNCATION, INNER_TOLERANCE, MAX_PIECES);
            [inner.value[0], inner.value[1], inner.error]
        },
        0.0,
        TRUNCATION,
        OUTER_TOLERANCE,
        MAX_PIECES,
    );
    // Mass outside the square, weighted by a bound on the integrand there.
    let tail = 2.0 * (-TRUNCATION).exp() * (1.5 * mean_energy + half_log2_1p(3.0 * TRUNCATION * half)).max(1.0);
    let error = outer.error + outer.value[2] + tail;
    if error.is_nan() || error > POINT_TOLERANCE {
        return Err(Error::ToleranceNotMet {
            target: POINT_TOLERANCE,
            achieved: error,
        });
    }
    Ok(PolicyExpectation {
        capacity: outer.value[0],
        energy: outer.value[1],
        error,
    })
}

/// Capacity Pareto point at weight `zeta`, with its certified error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityPoint {
    pub point: TradeoffPoint<f64>,
    pub error: f64,
}

/// Average energy and ergodic capacity of the capacity-metric Pareto rule.
pub fn pareto_capacity_point(config: &SystemConfig<f64>, zeta: Weight<f64>) -> Result<CapacityPoint> {
    let e = difference_policy_expectations(config, half_log2_1p, zeta)?;
    Ok(CapacityPoint {
        point: TradeoffPoint {
            energy: e.energy,
            value: e.capacity,
            delta: (2.0 * (e.energy / config.mean_energy() - 1.0)).clamp(0.0, 1.0),
        },
        error: e.error,
    })
}

fn energy_of(config: &SystemConfig<f64>, metric: ParetoMetric, zeta: f64) -> Result<f64> {
    match metric {
        ParetoMetric::Capacity => Ok(pareto_capacity_point(config, Weight::Finite(zeta))?.point.energy),
        ParetoMetric::OutageIndicator => pareto_outage_energy(config, zeta),
    }
}

/// Weight `ζ` at which the Pareto rule for `metric` transfers
/// `target_energy` on average, to within `1e-4·ε̄`.
pub fn solve_zeta_for_energy(config: &SystemConfig<f64>, target_energy: f64, metric: ParetoMetric) -> Result<f64> {
    solve_zeta_with_tolerance(config, target_energy, metric, ZETA_TOLERANCE)
}

/// [`solve_zeta_for_energy`] with the stopping tolerance given in units of
/// `ε̄`.
///
/// The bracket starts at `[0, 1]` and doubles its upper end until it
/// encloses the target; every new sample must not decrease the energy.
pub fn solve_zeta_with_tolerance(
    config: &SystemConfig<f64>,
    target_energy: f64,
    metric: ParetoMetric,
    tolerance: f64,
) -> Result<f64> {
    if config.n_relays() != 2 {
        return Err(Error::Dimension {
            op: "solve_zeta_for_energy",
            expected: 2,
            actual: config.n_relays(),
        });
    }
    let mean = config.mean_energy();
    let tol = tolerance * mean;
    let upper = 1.5 * mean;
    let lowest = energy_of(config, metric, 0.0)?;
    let floor = match metric {
        ParetoMetric::Capacity => mean,
        ParetoMetric::OutageIndicator => lowest,
    };
    if !(target_energy >= floor - tol && target_energy < upper) {
        return Err(Error::Infeasible {
            target: target_energy,
            lo: floor,
            hi: upper,
        });
    }
    if (lowest - target_energy).abs() < tol || target_energy <= lowest {
        return Ok(0.0);
    }

    let (mut lo, mut hi) = (0.0, 1.0);
    let mut last = lowest;
    loop {
        let e = energy_of(config, metric, hi)?;
        if e < last - tol {
            return Err(Error::Bracket(format!(
                "energy decreased from {last} to {e} when zeta grew from {lo} to {hi}"
            )));
        }
        if (e - target_energy).abs() < tol {
            return Ok(hi);
        }
        if e > target_energy {
            break;
        }
        if hi > 1e15 {
            return Err(Error::Bracket(format!(
                "energy {e} at zeta = {hi} still below target {target_energy}"
            )));
        }
        last = e;
        lo = hi;
        hi *= 2.0;
    }

    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            return Ok(mid);
        }
        let e = energy_of(config, metric, mid)?;
        if (e - target_energy).abs() < tol {
            return Ok(mid);
        }
        if e < target_energy {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Default grid of tradeoff factors, 21 uniform points on `[lo, 1]`.
pub fn uniform_grid(lo: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| if i + 1 == points { 1.0 } else { lo + (1.0 - lo) * i as f64 / (points - 1) as f64 })
            .collect(),
    }
}

fn check_grid(grid: &[f64], lo: f64) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::domain("frontier", "empty grid"));
    }
    for &d in grid {
        if !(d >= lo && d <= 1.0) {
            return Err(Error::Infeasible { target: d, lo, hi: 1.0 });
        }
    }
    Ok(())
}

fn assemble(mut pairs: Vec<(TradeoffPoint<f64>, f64)>, method: FrontierMethod, tolerance: f64) -> Result<FrontierCurve> {
    pairs.sort_by(|a, b| a.0.energy.total_cmp(&b.0.energy));
    pairs.dedup_by(|b, a| b.0.energy == a.0.energy);
    for w in pairs.windows(2) {
        if w[1].0.value > w[0].0.value + 1e-9 {
            return Err(Error::domain(
                "frontier",
                format!("value increases from {} to {} along the curve", w[0].0.value, w[1].0.value),
            ));
        }
    }
    let (points, weights) = pairs.into_iter().unzip();
    Ok(FrontierCurve {
        points,
        weights,
        method,
        tolerance,
    })
}

/// Capacity Pareto frontier at the given tradeoff factors.
///
/// Points are evaluated in parallel; each is deterministic, so the curve
/// does not depend on the thread count.
pub fn capacity_frontier(config: &SystemConfig<f64>, grid: &[f64]) -> Result<FrontierCurve> {
    check_grid(grid, 0.0)?;
    let pairs = grid
        .par_iter()
        .map(|&delta| {
            let target = energy_from_delta(config, delta)?;
            if delta >= 1.0 {
                let p = pareto_capacity_point(config, Weight::EnergyOnly)?;
                return Ok((p.point, f64::INFINITY));
            }
            let zeta = solve_zeta_with_tolerance(config, target, ParetoMetric::Capacity, CURVE_ZETA_TOLERANCE)?;
            let p = pareto_capacity_point(config, Weight::Finite(zeta))?;
            Ok((p.point, zeta))
        })
        .collect::<Result<Vec<_>>>()?;
    assemble(pairs, FrontierMethod::Quadrature, POINT_TOLERANCE)
}

/// Outage Pareto frontier (probability of no outage against energy) at the
/// given tradeoff factors, all of which must lie in
/// [`delta_range_outage`].
pub fn outage_frontier(config: &SystemConfig<f64>, grid: &[f64]) -> Result<FrontierCurve> {
    let (lo, _) = delta_range_outage(config)?;
    check_grid(grid, lo - 1e-12)?;
    let pairs = grid
        .iter()
        .map(|&delta| {
            let delta = delta.max(lo);
            let target = energy_from_delta(config, delta)?;
            let zeta = if delta >= 1.0 {
                f64::INFINITY
            } else {
                solve_zeta_with_tolerance(config, target, ParetoMetric::OutageIndicator, CURVE_ZETA_TOLERANCE)?
            };
            let energy = pareto_outage_energy(config, zeta)?;
            let point = TradeoffPoint {
                energy,
                value: pareto_no_outage(config, zeta)?,
                delta: (2.0 * (energy / config.mean_energy() - 1.0)).clamp(0.0, 1.0),
            };
            Ok((point, zeta))
        })
        .collect::<Result<Vec<_>>>()?;
    assemble(pairs, FrontierMethod::ClosedForm, CURVE_ZETA_TOLERANCE)
}
