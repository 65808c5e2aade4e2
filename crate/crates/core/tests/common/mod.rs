#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use relaycap_core::NetworkConfig;

/// Composite Simpson rule with `n` (even) panels; independent of the
/// library's adaptive integrator.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2));
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + k as f64 * h);
    }
    s * h / 3.0
}

/// E1(x) via `∫₀^∞ exp(-x e^s) ds` (substituting t = e^s) and Simpson.
pub fn e1_oracle(x: f64) -> f64 {
    let upper = (745.0 / x).ln();
    simpson(|s| (-x * s.exp()).exp(), 0.0, upper, 400_000)
}

/// `Π (1 - e^{-γ/m})`.
pub fn product_cdf(means: &[f64], gamma: f64) -> f64 {
    means.iter().map(|m| 1.0 - (-gamma / m).exp()).product()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn log_uniform(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

/// Random i.n.i.d. network with means log-uniform in `[lo, hi]`.
pub fn random_config(rng: &mut StdRng, relays: usize, lo: f64, hi: f64) -> NetworkConfig {
    let first = (0..relays).map(|_| log_uniform(rng, lo, hi)).collect();
    let second = (0..relays).map(|_| log_uniform(rng, lo, hi)).collect();
    NetworkConfig::new(first, second, log_uniform(rng, lo, hi)).unwrap()
}

/// Kolmogorov–Smirnov distance between a sample and a CDF.
pub fn ks_distance<F: Fn(f64) -> f64>(mut sample: Vec<f64>, cdf: F) -> f64 {
    sample.sort_by(f64::total_cmp);
    let n = sample.len() as f64;
    sample
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            let f = cdf(x);
            (f - k as f64 / n).abs().max(((k + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

pub fn db(snr_db: f64) -> f64 {
    10f64.powf(snr_db / 10.0)
}
