//! Closed-form ergodic capacities.
//!
//! Every average of `log₂(1 + X)` against an exponential weight reduces to
//! `∫₀^∞ log₂(1+x) e^{-bx} dx = log₂e · e^b E1(b) / b`, so each expression
//! below is a signed sum of scaled exponential integrals `e^b E1(b)`, always
//! evaluated through [`exp_e1_scaled`](crate::special::exp_e1_scaled) so
//! that tiny means (huge `b`) cannot overflow.

use core::fmt;

use crate::channel::NetworkConfig;
use crate::combinatorics::{all_subsets, Universe};
use crate::error::{Error, Result};
use crate::math::{ln_1p, LOG2_E};
use crate::special::exp_e1_scaled_unchecked as scaled_e1;
use crate::NeumaierSum;

/// How a capacity value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Analytic,
    MonteCarlo,
    Quadrature,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::MonteCarlo => "montecarlo",
            Method::Quadrature => "quadrature",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ergodic capacity in bits/s/Hz.
///
/// `std_error` and `samples` are zero unless `method` is
/// [`Method::MonteCarlo`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityEstimate {
    pub value: f64,
    pub method: Method,
    pub std_error: f64,
    pub samples: u64,
}

impl CapacityEstimate {
    pub fn analytic(value: f64) -> Self {
        Self::deterministic(value, Method::Analytic)
    }

    pub fn quadrature(value: f64) -> Self {
        Self::deterministic(value, Method::Quadrature)
    }

    pub fn monte_carlo(value: f64, std_error: f64, samples: u64) -> Self {
        Self {
            value,
            method: Method::MonteCarlo,
            std_error,
            samples,
        }
    }

    fn deterministic(value: f64, method: Method) -> Self {
        // signed closed-form sums may land a few ulps below zero
        let value = if value < 0.0 && value > -1e-15 {
            0.0
        } else {
            value
        };
        Self {
            value,
            method,
            std_error: 0.0,
            samples: 0,
        }
    }
}

/// `(1/rate) · e^{rate} E1(rate)`: the integral of `ln(1+x) e^{-rate·x}`.
#[inline]
fn weighted_log_integral(rate: f64) -> f64 {
    scaled_e1(rate) / rate
}

/// Full-CSI ergodic capacity `C_F`.
///
/// Relay `i` contributes `½ A_i` with
/// `A_i = e^{r_i}E1(r_i) - r_i Σ_T (-1)^{|T|-1} (r_i + ρ_T)⁻¹ e^{r_i+ρ_T}E1(r_i+ρ_T)`,
/// `r_i = 1/γ̄_i` and `T` ranging over the non-empty subsets of
/// `{direct} ∪ {relay bottlenecks} \ {i}` with combined rate `ρ_T`. The direct
/// link contributes
/// `e^{r_0}E1(r_0) + r_0 Σ_T (-1)^{|T|} (r_0 + ρ_T)⁻¹ e^{r_0+ρ_T}E1(r_0+ρ_T)`
/// over the non-empty subsets of the relay bottlenecks. All scaled by `log₂e`.
pub fn capacity_full_csi(config: &NetworkConfig) -> Result<CapacityEstimate> {
    let m = config.relay_count();
    let mut total = NeumaierSum::new();

    for i in 1..=m {
        let rate = 1.0 / config.bottleneck_mean(i)?;
        let others = Universe::BottleneckWithDirect.build(config, Some(i))?;
        total.add(0.5 * scaled_e1(rate));
        for term in all_subsets(&others) {
            // size m+1 subset carries (-1)^m; the bracket subtracts it
            let b = rate + term.combined_inverse_mean;
            total.add(0.5 * term.sign() * rate * weighted_log_integral(b));
        }
    }

    let rate0 = 1.0 / config.mean_snr_direct();
    let relays = Universe::Bottleneck.build(config, None)?;
    total.add(scaled_e1(rate0));
    for term in all_subsets(&relays) {
        let b = rate0 + term.combined_inverse_mean;
        total.add(term.sign() * rate0 * weighted_log_integral(b));
    }

    Ok(CapacityEstimate::analytic(LOG2_E * total.value()))
}

/// Partial-CSI ergodic capacity `C_P`.
///
/// With `a = 1/γ̄_ik`, `c = 1/γ̄_ki`, `r_i = a + c` and `T` over the non-empty
/// subsets of the Ω universe `{γ̄_0, γ̄_k1, .., γ̄_kM} \ {i}`, relay `i`
/// contributes
/// `½ [e^{r_i}E1(r_i) - c Σ_T (-1)^{|T|-1} (a (c + ρ_T)⁻¹ + 1) (r_i + ρ_T)⁻¹ e^{r_i+ρ_T}E1(r_i+ρ_T)]`.
/// The first summand inside the composite factor is the branch where the
/// first hop is the bottleneck, the `+1` the branch where the second hop is.
/// The direct link contributes
/// `e^{r_0}E1(r_0) - r_0 Σ_T (-1)^{|T|-1} (r_0 + ρ_T)⁻¹ e^{r_0+ρ_T}E1(r_0+ρ_T)`
/// with `T` over the Ω universe without index 0.
pub fn capacity_partial_csi(config: &NetworkConfig) -> Result<CapacityEstimate> {
    let m = config.relay_count();
    let mut total = NeumaierSum::new();

    for i in 1..=m {
        let a = 1.0 / config.mean_snr_first_hop(i)?;
        let c = 1.0 / config.mean_snr_second_hop(i)?;
        let rate = 1.0 / config.bottleneck_mean(i)?;
        let others = Universe::Omega.build(config, Some(i))?;
        total.add(0.5 * scaled_e1(rate));
        for term in all_subsets(&others) {
            let w = term.combined_inverse_mean;
            let composite = a / (c + w) + 1.0;
            let b = rate + w;
            total.add(0.5 * term.sign() * c * composite * weighted_log_integral(b));
        }
    }

    let rate0 = 1.0 / config.mean_snr_direct();
    let others = Universe::Omega.build(config, Some(0))?;
    total.add(scaled_e1(rate0));
    for term in all_subsets(&others) {
        let b = rate0 + term.combined_inverse_mean;
        total.add(term.sign() * rate0 * weighted_log_integral(b));
    }

    Ok(CapacityEstimate::analytic(LOG2_E * total.value()))
}

/// Capacity of always using the direct link: `log₂e · e^{1/γ̄_0} E1(1/γ̄_0)`.
pub fn capacity_direct_only(config: &NetworkConfig) -> CapacityEstimate {
    CapacityEstimate::analytic(LOG2_E * scaled_e1(1.0 / config.mean_snr_direct()))
}

fn check_mean(mean_snr: f64, function: &'static str) -> Result<f64> {
    if mean_snr.is_finite() && mean_snr > 0.0 {
        Ok(mean_snr)
    } else {
        Err(Error::Domain {
            function,
            value: mean_snr,
        })
    }
}

/// `C_F` for one relay and i.i.d. links of mean `γ̄`:
/// `log₂e [e^{1/γ̄}E1(1/γ̄) + ½e^{2/γ̄}E1(2/γ̄) - ⅔e^{3/γ̄}E1(3/γ̄)]`.
pub fn capacity_full_iid_single(mean_snr: f64) -> Result<CapacityEstimate> {
    let g = check_mean(mean_snr, "capacity_full_iid_single")?;
    let v = scaled_e1(1.0 / g) + 0.5 * scaled_e1(2.0 / g) - 2.0 / 3.0 * scaled_e1(3.0 / g);
    Ok(CapacityEstimate::analytic(LOG2_E * v))
}

/// `C_P` for one relay and i.i.d. links:
/// `log₂e [e^{1/γ̄}E1(1/γ̄) - ¼e^{3/γ̄}E1(3/γ̄)]`.
pub fn capacity_partial_iid_single(mean_snr: f64) -> Result<CapacityEstimate> {
    let g = check_mean(mean_snr, "capacity_partial_iid_single")?;
    let v = scaled_e1(1.0 / g) - 0.25 * scaled_e1(3.0 / g);
    Ok(CapacityEstimate::analytic(LOG2_E * v))
}

/// Full-over-partial gain for one relay and i.i.d. links:
/// `log₂e [½e^{2/γ̄}E1(2/γ̄) - (5/12)e^{3/γ̄}E1(3/γ̄)]`.
pub fn capacity_gain_iid(mean_snr: f64) -> Result<f64> {
    let g = check_mean(mean_snr, "capacity_gain_iid")?;
    Ok(LOG2_E * (0.5 * scaled_e1(2.0 / g) - 5.0 / 12.0 * scaled_e1(3.0 / g)))
}

/// High-SNR form of [`capacity_gain_iid`]: `(log₂e / 12) ln(1 + γ̄/2)`.
pub fn capacity_gain_high_snr(mean_snr: f64) -> Result<f64> {
    let g = check_mean(mean_snr, "capacity_gain_high_snr")?;
    Ok(LOG2_E / 12.0 * ln_1p(g / 2.0))
}
