//! Exponential integral `E1` and its scaled form `e^x E1(x)`.
//!
//! Below [`SERIES_SWITCH`] the convergent power series
//! `E1(x) = -γ - ln x - Σ_{k≥1} (-x)^k / (k·k!)` is used; at and above it,
//! the continued fraction
//! `e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...)))` evaluated by the modified
//! Lentz algorithm.

use crate::error::{Error, Result};
use crate::math::{abs, exp, ln, ln_1p};

/// Euler–Mascheroni constant, 20 significant digits.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

/// Argument at which evaluation switches from the series to the continued fraction.
pub const SERIES_SWITCH: f64 = 1.0;

const SERIES_REL_TOL: f64 = 1e-16;
const CF_REL_TOL: f64 = 1e-15;
const CF_MAX_ITER: usize = 10_000;
const TINY: f64 = 1e-300;

/// Strictly positive, finite argument of `E1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PositiveReal(f64);

impl PositiveReal {
    pub fn new(value: f64) -> Result<Self> {
        Self::checked(value, "PositiveReal")
    }

    fn checked(value: f64, function: &'static str) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Self(value))
        } else {
            Err(Error::Domain { function, value })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for PositiveReal {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

/// `E1(x) = ∫₁^∞ e^{-tx}/t dt` for `x > 0`.
///
/// Returns `0.0` once the true value underflows (x ≳ 740).
pub fn e1(x: f64) -> Result<f64> {
    let x = PositiveReal::checked(x, "e1")?.get();
    Ok(e1_unchecked(x))
}

/// `e^x · E1(x)` for `x > 0`, finite for every representable positive `x`.
pub fn exp_e1_scaled(x: f64) -> Result<f64> {
    if x == f64::INFINITY {
        return Ok(0.0);
    }
    let x = PositiveReal::checked(x, "exp_e1_scaled")?.get();
    Ok(exp_e1_scaled_unchecked(x))
}

/// High-SNR approximation `E1(x) ≈ e^{-x} ln(1 + 1/x)`.
pub fn e1_approx_high_snr(x: f64) -> Result<f64> {
    let x = PositiveReal::checked(x, "e1_approx_high_snr")?.get();
    Ok(exp(-x) * ln_1p(1.0 / x))
}

pub(crate) fn e1_unchecked(x: f64) -> f64 {
    if x < SERIES_SWITCH {
        e1_series(x)
    } else {
        exp(-x) * exp_e1_continued_fraction(x)
    }
}

pub(crate) fn exp_e1_scaled_unchecked(x: f64) -> f64 {
    if x < SERIES_SWITCH {
        exp(x) * e1_series(x)
    } else {
        exp_e1_continued_fraction(x)
    }
}

/// Power series for `E1`; accurate for small and moderate `x`.
pub(crate) fn e1_series(x: f64) -> f64 {
    // term_k = (-x)^k / k!, summand = term_k / k
    let mut term = 1.0;
    let mut sum = 0.0;
    let mut k = 1.0;
    loop {
        term *= -x / k;
        let summand = term / k;
        sum += summand;
        if abs(summand) < SERIES_REL_TOL * abs(sum) || k > 500.0 {
            break;
        }
        k += 1.0;
    }
    -EULER_GAMMA - ln(x) - sum
}

/// Modified Lentz evaluation of `e^x E1(x)`; accurate for `x ≳ 1`.
pub(crate) fn exp_e1_continued_fraction(x: f64) -> f64 {
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..CF_MAX_ITER {
        let i = i as f64;
        let a = -i * i;
        b += 2.0;
        d = a * d + b;
        if abs(d) < TINY {
            d = TINY;
        }
        c = b + a / c;
        if abs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        h *= delta;
        if abs(delta - 1.0) < CF_REL_TOL {
            break;
        }
    }
    h
}
