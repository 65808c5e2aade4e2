mod common;

use common::e1_oracle;
use proptest::prelude::*;
use relaycap_core::special::{e1, e1_approx_high_snr, exp_e1_scaled, EULER_GAMMA};

#[test]
fn e1_matches_quadrature_oracle() {
    let oracle = e1_oracle(1.0);
    assert!((oracle - 0.219_383_934_395_52).abs() < 1e-13, "{oracle}");
    for x in [1e-3, 0.3, 0.99, 1.01, 2.0, 7.5, 30.0, 120.0] {
        let want = e1_oracle(x);
        let got = e1(x).unwrap();
        assert!(
            ((got - want) / want).abs() < 1e-12,
            "x={x}: {got} vs {want}"
        );
    }
}

#[test]
fn e1_small_argument_series_oracle() {
    let x: f64 = 1e-6;
    let tail: f64 = (1..=5)
        .map(|k| {
            let fact: f64 = (1..=k).map(|j| j as f64).product();
            (-x).powi(k) / (k as f64 * fact)
        })
        .sum();
    let want = -EULER_GAMMA - x.ln() - tail;
    let got = e1(x).unwrap();
    assert!(((got - want) / want).abs() < 1e-14);
    assert!((got - 13.2383).abs() < 1e-4);
}

#[test]
fn e1_accuracy_over_contract_range() {
    // relative accuracy against the e^x-scaled form, which uses a different
    // branch for x < 1 (product with exp) and is checked separately
    let mut x = 1e-8_f64;
    while x <= 700.0 {
        let got = e1(x).unwrap();
        let via_scaled = exp_e1_scaled(x).unwrap() * (-x).exp();
        assert!(got > 0.0);
        assert!(((got - via_scaled) / got).abs() < 1e-12, "x={x}");
        x *= 1.37;
    }
    assert_eq!(e1(1e4).unwrap(), 0.0);
}

#[test]
fn scaled_form_at_one() {
    let want = std::f64::consts::E * e1_oracle(1.0);
    let got = exp_e1_scaled(1.0).unwrap();
    assert!(((got - want) / want).abs() < 1e-12);
    assert!((got - 0.596_347_362_323_19).abs() < 1e-13);
}

#[test]
fn e1_strictly_decreasing_on_grid() {
    let grid: Vec<f64> = (0..400)
        .map(|k| 1e-8 * 1.08f64.powi(k))
        .filter(|&x| x < 700.0)
        .collect();
    for w in grid.windows(2) {
        assert!(e1(w[0]).unwrap() > e1(w[1]).unwrap(), "{} {}", w[0], w[1]);
    }
}

#[test]
fn approximation_gap_at_high_snr() {
    let approx = e1_approx_high_snr(0.01).unwrap();
    let exact = e1(0.01).unwrap();
    assert!((approx - 4.5692).abs() < 1e-4);
    assert!((exact - 4.0379).abs() < 1e-4);
    // the gap shrinks relative to the value as x → 0
    let rel = |x: f64| (e1_approx_high_snr(x).unwrap() - e1(x).unwrap()) / e1(x).unwrap();
    assert!(rel(1e-6) < rel(1e-2));
}

proptest! {
    #[test]
    fn scaled_sandwich(log_x in -18.0f64..13.8) {
        let x = log_x.exp();
        let v = exp_e1_scaled(x).unwrap();
        prop_assert!(1.0 / (x + 1.0) < v && v < 1.0 / x, "x={} v={}", x, v);
    }

    #[test]
    fn scaled_consistent_with_unscaled(x in 1e-8f64..600.0) {
        let s = exp_e1_scaled(x).unwrap();
        let u = x.exp() * e1(x).unwrap();
        prop_assert!(((s - u) / s).abs() <= 1e-9);
    }
}
