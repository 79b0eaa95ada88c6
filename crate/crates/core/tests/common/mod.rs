//! Test-only numerical oracles, independent of the library's integrators.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite 20-point Gauss–Legendre rule over `panels` equal pieces.
pub struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    pub fn new() -> Self {
        let (nodes, weights) = gauss_legendre(20);
        Rule { nodes, weights }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
        let h = (b - a) / panels as f64;
        let mut total = 0.0;
        for p in 0..panels {
            let lo = a + h * p as f64;
            let mid = lo + 0.5 * h;
            let mut s = 0.0;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                s += w * f(mid + 0.5 * h * x);
            }
            total += 0.5 * h * s;
        }
        total
    }
}

/// `E1(x) = ∫₀^∞ exp(-x·e^s) ds` (the substitution `t = e^s` in the
/// defining integral), which is smooth and decays double-exponentially.
pub fn e1_oracle(x: f64) -> f64 {
    let rule = Rule::new();
    let end = (60.0 / x).ln().max(1.0);
    rule.integrate(|s| (-x * s.exp()).exp(), 0.0, end, 400)
}

/// `½ log₂(1 + x)`.
pub fn capacity(x: f64) -> f64 {
    0.5 * x.ln_1p() / std::f64::consts::LN_2
}

/// `∫₀^∞ g(x) dx` for integrands decaying like `e^{-rate·x}`, truncated at
/// `60/rate` and split into geometrically growing panels so the region near
/// zero is resolved.
pub fn integrate_exponential(g: impl Fn(f64) -> f64, rate: f64) -> f64 {
    let rule = Rule::new();
    let end = 60.0 / rate;
    let mut total = rule.integrate(&g, 0.0, end * 1e-6, 4);
    let mut lo = end * 1e-6;
    while lo < end {
        let hi = (lo * 2.0).min(end);
        total += rule.integrate(&g, lo, hi, 8);
        lo = hi;
    }
    total
}

/// `∫_a^b g(x) dx` for finite `a < b`.
pub fn integrate_finite(g: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    Rule::new().integrate(g, a, b, 200)
}

/// Density of one end-to-end SNR, exponential with mean `γ̄/2`.
pub fn snr_pdf(x: f64, mean_snr: f64) -> f64 {
    let rate = 2.0 / mean_snr;
    rate * (-rate * x).exp()
}

pub fn snr_cdf(x: f64, mean_snr: f64) -> f64 {
    -(-2.0 * x / mean_snr).exp_m1()
}

/// Density of the largest of `n` end-to-end SNRs.
pub fn best_snr_pdf(x: f64, mean_snr: f64, n: usize) -> f64 {
    n as f64 * snr_pdf(x, mean_snr) * snr_cdf(x, mean_snr).powi(n as i32 - 1)
}
