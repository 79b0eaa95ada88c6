mod common;

use proptest::prelude::*;
use relay_tradeoff::specfun::{exp_integral_e1, exp_scaled_e1, harmonic};

#[test]
fn e1_matches_quadrature_on_a_log_grid() {
    for i in 0..100 {
        let x = 1e-6 * 1e8f64.powf(i as f64 / 99.0);
        let oracle = common::e1_oracle(x);
        let value = exp_integral_e1(x).unwrap();
        assert!(
            ((value - oracle) / oracle).abs() < 1e-10,
            "x = {x}: {value} vs {oracle}"
        );
    }
}

#[test]
fn e1_examples() {
    let one = common::e1_oracle(1.0);
    assert!((one - 0.219_383_934_395_52).abs() < 1e-10);
    assert!((exp_integral_e1(1.0).unwrap() - one).abs() < 1e-10);
    let ten = common::e1_oracle(10.0);
    assert!(((exp_integral_e1(10.0).unwrap() - ten) / ten).abs() < 1e-10);
    assert!((ten - 4.156_97e-6).abs() < 1e-11);
}

#[test]
fn e1_accuracy_over_the_documented_range() {
    for x in [1e-8, 1e-7, 0.999_999, 1.000_001, 50.0, 300.0, 699.0] {
        let oracle = common::e1_oracle(x);
        let value = exp_integral_e1(x).unwrap();
        assert!(((value - oracle) / oracle).abs() < 1e-10, "x = {x}");
    }
}

#[test]
fn scaled_e1_asymptote() {
    assert!((1000.0 * exp_scaled_e1(1000.0f64).unwrap() - 1.0).abs() < 0.01);
}

proptest! {
    #[test]
    fn e1_is_decreasing_and_convex(a in 1e-6f64..50.0, b in 1e-6f64..50.0, c in 1e-6f64..50.0) {
        let mut xs = [a, b, c];
        xs.sort_by(f64::total_cmp);
        prop_assume!(xs[1] - xs[0] > 1e-9 * xs[1] && xs[2] - xs[1] > 1e-9 * xs[2]);
        let e: Vec<f64> = xs.iter().map(|&x| exp_integral_e1(x).unwrap()).collect();
        prop_assert!(e[0] > e[1] && e[1] > e[2]);
        let mid = 0.5 * (xs[0] + xs[2]);
        let chord = 0.5 * (e[0] + e[2]);
        prop_assert!(exp_integral_e1(mid).unwrap() <= chord * (1.0 + 1e-14));
    }

    #[test]
    fn harmonic_recurrence(n in 1usize..1_000_000) {
        let h0: f64 = harmonic(n).unwrap();
        let h1: f64 = harmonic(n + 1).unwrap();
        let inc = 1.0 / (n as f64 + 1.0);
        prop_assert!(((h1 - h0) - inc).abs() <= f64::EPSILON * h1);
    }
}
