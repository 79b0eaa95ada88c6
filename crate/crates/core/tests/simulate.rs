use relay_tradeoff::closedform::*;
use relay_tradeoff::schemes::*;
use relay_tradeoff::simulate::*;
use relay_tradeoff::{Config, Scheme};

fn config(n: usize, snr: f64, energy: f64, threshold: f64) -> Config {
    Config::new(n, snr, energy, threshold).unwrap()
}

fn assert_within(name: &str, e: &Estimate, expected: f64, k: f64) {
    assert!(e.covers(expected, k), "{name}: {} ± {} vs {expected} (z = {:.2})", e.mean, e.std_error, e.z_score(expected));
}

/// Closed-form (capacity, energy, outage) of one parametrised scheme.
fn closed_form(c: &Config, scheme: &Scheme) -> (f64, f64, f64) {
    match *scheme {
        SchemeParam::TimeSharing { mu } => {
            let e = energy_ts_of_mu(c, mu).unwrap();
            (c_ts_of_mu(c, mu).unwrap(), e, outage_ts(c, delta_from_energy(c, e).unwrap()).unwrap())
        }
        SchemeParam::ThresholdChecking { tau } => (
            c_tc_of_tau(c, tau).unwrap(),
            energy_tc_of_tau(c, tau).unwrap(),
            outage_tc_of_tau(c, tau).unwrap(),
        ),
        SchemeParam::WeightedDifference { nu } => {
            let nu = nu.value();
            (c_wd_of_nu(c, nu).unwrap(), energy_wd_of_nu(c, nu).unwrap(), outage_wd_of_nu(c, nu).unwrap())
        }
        SchemeParam::ParetoOptimal { .. } => unreachable!(),
    }
}

#[test]
fn estimates_match_closed_forms() {
    let cases = [
        (config(2, 10.0, 1.0, 1.0), SchemeParam::TimeSharing { mu: 0.4 }),
        (config(3, 31.6, 2.0, 3.0), SchemeParam::TimeSharing { mu: 0.8 }),
        (config(2, 10.0, 1.0, 1.0), SchemeParam::ThresholdChecking { tau: 6.0 }),
        (config(3, 100.0, 0.5, 10.0), SchemeParam::ThresholdChecking { tau: 80.0 }),
        (config(2, 10.0, 1.0, 1.0), SchemeParam::WeightedDifference { nu: Weight::Finite(5.0) }),
        (config(2, 100.0, 1.0, 4.0), SchemeParam::WeightedDifference { nu: Weight::Finite(12.0) }),
    ];
    for (i, (c, scheme)) in cases.iter().enumerate() {
        let r = run(c, scheme, &MonteCarloConfig::new(1_000_000, 100 + i as u64).unwrap()).unwrap();
        let (cap, energy, outage) = closed_form(c, scheme);
        assert_within(&format!("{scheme:?} capacity"), &r.capacity, cap, 3.0);
        assert_within(&format!("{scheme:?} energy"), &r.energy, energy, 3.0);
        assert_within(&format!("{scheme:?} outage"), &r.outage, outage, 3.0);
    }
}

#[test]
fn boundary_schemes_match_bounds() {
    let c = config(2, 10.0, 1.0, 1.0);
    let mc = MonteCarloConfig::new(1_000_000, 11).unwrap();
    let r = run(&c, &SchemeParam::TimeSharing { mu: 1.0 }, &mc).unwrap();
    assert_within("max-SNR capacity", &r.capacity, c_max(&c).unwrap(), 3.0);
    assert_within("max-SNR energy", &r.energy, 1.0, 3.0);
    let r = run(&c, &SchemeParam::ThresholdChecking { tau: f64::INFINITY }, &mc).unwrap();
    assert_within("max-energy capacity", &r.capacity, c_min(&c).unwrap(), 3.0);
    assert_within("max-energy energy", &r.energy, 1.5, 3.0);
    assert_within("max-energy outage", &r.outage, 1.0 - (-0.2f64).exp(), 3.0);
}

#[test]
fn pareto_outage_policy_matches_closed_forms() {
    let c = config(2, 2.0 / std::f64::consts::LN_2, 1.0, 1.0);
    for (i, zeta) in [0.1, 0.5, 1.0, 10.0].into_iter().enumerate() {
        let scheme = SchemeParam::ParetoOptimal {
            zeta: Weight::Finite(zeta),
            metric: ParetoMetric::OutageIndicator,
        };
        let r = run(&c, &scheme, &MonteCarloConfig::new(1_000_000, 200 + i as u64).unwrap()).unwrap();
        assert_within("pareto energy", &r.energy, pareto_outage_energy(&c, zeta).unwrap(), 3.0);
        assert_within("pareto outage", &r.outage, 1.0 - pareto_no_outage(&c, zeta).unwrap(), 3.0);
    }
}

#[test]
fn zero_weight_reproduces_max_snr_selection() {
    let c = config(2, 10.0, 1.0, 1.0);
    let mc = MonteCarloConfig::new(200_000, 5).unwrap();
    let by_snr = run(&c, &SchemeParam::TimeSharing { mu: 1.0 }, &mc).unwrap();
    let wd = run(&c, &SchemeParam::WeightedDifference { nu: Weight::Finite(0.0) }, &mc).unwrap();
    let tc = run(&c, &SchemeParam::ThresholdChecking { tau: 0.0 }, &mc).unwrap();
    assert_eq!(wd.selection_counts, by_snr.selection_counts);
    assert_eq!(wd, by_snr);
    assert_eq!(tc, by_snr);
}

#[test]
fn results_ignore_threads_and_batches() {
    let c = config(3, 10.0, 1.0, 1.0);
    let scheme = SchemeParam::TimeSharing { mu: 0.3 };
    let reference = run(&c, &scheme, &MonteCarloConfig::with_batch_size(123_457, 9, 123_457).unwrap()).unwrap();
    for threads in [1, 2, 4] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        for batch in [1_000, 4_096, 10_000, 99_999] {
            let mc = MonteCarloConfig::with_batch_size(123_457, 9, batch).unwrap();
            let r = pool.install(|| run(&c, &scheme, &mc)).unwrap();
            assert_eq!(r, reference, "threads {threads}, batch {batch}");
        }
    }
}

#[test]
fn result_invariants() {
    let c = config(2, 3.0, 1.0, 2.0);
    let r = run(&c, &SchemeParam::ThresholdChecking { tau: 2.0 }, &MonteCarloConfig::new(54_321, 3).unwrap()).unwrap();
    assert_eq!(r.selection_counts.iter().sum::<u64>(), 54_321);
    assert_eq!(r.capacity.n, 54_321);
    assert!((0.0..=1.0).contains(&r.outage.mean));
    assert_eq!(r.outage.mean, r.outage_events as f64 / 54_321.0);
    assert!(!r.low_confidence);
}

#[test]
fn invalid_inputs_are_rejected() {
    let c = config(3, 10.0, 1.0, 1.0);
    let mc = MonteCarloConfig::new(100, 1).unwrap();
    assert!(run(&c, &SchemeParam::WeightedDifference { nu: Weight::Finite(1.0) }, &mc).is_err());
    assert!(run(&c, &SchemeParam::TimeSharing { mu: -0.1 }, &mc).is_err());
    assert!(MonteCarloConfig::new(0, 1).is_err());
    assert!(MonteCarloConfig::with_batch_size(10, 1, 11).is_err());
    assert!(MonteCarloConfig::with_batch_size(10, 1, 0).is_err());
}

/// Counts how often `mean ± 1.96·std_error` covers the closed form over 100
/// seeds.
fn coverage(c: &Config, scheme: &Scheme, expected: f64, pick: fn(&SimulationResult) -> &Estimate) -> usize {
    (0..100u64)
        .filter(|&seed| {
            let r = run(c, scheme, &MonteCarloConfig::new(20_000, 1_000 + seed).unwrap()).unwrap();
            pick(&r).covers(expected, 1.96)
        })
        .count()
}

#[test]
fn confidence_intervals_are_calibrated() {
    let c = config(2, 10.0, 1.0, 1.0);
    let ts = SchemeParam::TimeSharing { mu: 0.5 };
    let wd = SchemeParam::WeightedDifference { nu: Weight::Finite(5.0) };
    let (ts_cap, ts_energy, _) = closed_form(&c, &ts);
    let (wd_cap, wd_energy, wd_out) = closed_form(&c, &wd);
    let counts = [
        coverage(&c, &ts, ts_cap, |r| &r.capacity),
        coverage(&c, &ts, ts_energy, |r| &r.energy),
        coverage(&c, &wd, wd_cap, |r| &r.capacity),
        coverage(&c, &wd, wd_energy, |r| &r.energy),
        coverage(&c, &wd, wd_out, |r| &r.outage),
    ];
    assert!(counts.iter().any(|k| (93..=97).contains(k)), "coverage counts {counts:?}");
    // Far outside the binomial spread would mean a biased estimator or a
    // wrong standard error.
    assert!(counts.iter().all(|k| (86..=100).contains(k)), "coverage counts {counts:?}");
}

#[test]
fn outage_slopes() {
    let ratios = [100.0, 178.0, 316.0, 562.0, 1000.0];
    // `frames(ratio)` keeps at least 100 expected outages at every point.
    let slope = |scheme: Scheme, frames: fn(f64) -> u64| {
        let points: Vec<(f64, f64)> = ratios
            .iter()
            .enumerate()
            .map(|(i, &ratio)| {
                let c = config(2, ratio, 1.0, 1.0);
                let r = run(&c, &scheme, &MonteCarloConfig::new(frames(ratio), 40 + i as u64).unwrap()).unwrap();
                assert!(!r.low_confidence);
                (ratio.ln(), r.outage.mean.ln())
            })
            .collect();
        least_squares_slope(&points)
    };
    let c = config(2, 10.0, 1.0, 1.0);
    let mu = mu_from_energy(&c, energy_from_delta(&c, 0.5).unwrap()).unwrap();
    let s = slope(SchemeParam::TimeSharing { mu }, |_| 1_000_000);
    assert!((s + 1.0).abs() < 0.1, "time sharing slope {s}");
    let pareto = SchemeParam::ParetoOptimal {
        zeta: Weight::Finite(0.1),
        metric: ParetoMetric::OutageIndicator,
    };
    let s = slope(pareto, |ratio| (3e7 * (ratio / 1000.0).powi(2)).max(1e6) as u64);
    assert!((s + 2.0).abs() < 0.15, "pareto slope {s}");
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
