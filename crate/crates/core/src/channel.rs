//! Network fading statistics, channel sampling and the analytical CDFs of
//! bottleneck and maximum SNRs.
//!
//! All SNRs are linear. Relays are numbered `1..=M`; index `0` is the direct
//! source–destination link.

use alloc::format;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::combinatorics::{ProductExpansion, Universe, MAX_RELAYS};
use crate::error::{Error, Result};
use crate::math::{exp, ln};

/// Average SNRs of all `2M + 1` links.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    first_hop: Vec<f64>,
    second_hop: Vec<f64>,
    direct: f64,
}

impl NetworkConfig {
    /// `first_hop[i-1]` is the mean SNR of S→Rᵢ, `second_hop[i-1]` of Rᵢ→D.
    pub fn new(first_hop: Vec<f64>, second_hop: Vec<f64>, direct: f64) -> Result<Self> {
        if first_hop.is_empty() {
            return Err(Error::InvalidConfig(
                "at least one relay is required".into(),
            ));
        }
        if first_hop.len() != second_hop.len() {
            return Err(Error::InvalidConfig(format!(
                "{} first-hop means but {} second-hop means",
                first_hop.len(),
                second_hop.len()
            )));
        }
        if first_hop.len() > MAX_RELAYS {
            return Err(Error::TooManyLinks {
                count: first_hop.len(),
                limit: MAX_RELAYS,
            });
        }
        let valid = |m: f64| m.is_finite() && m > 0.0;
        if let Some(bad) = first_hop
            .iter()
            .chain(&second_hop)
            .chain(core::iter::once(&direct))
            .find(|&&m| !valid(m))
        {
            return Err(Error::InvalidConfig(format!(
                "mean SNR {bad} is not positive and finite"
            )));
        }
        Ok(Self {
            first_hop,
            second_hop,
            direct,
        })
    }

    pub fn relay_count(&self) -> usize {
        self.first_hop.len()
    }

    pub fn first_hop_means(&self) -> &[f64] {
        &self.first_hop
    }

    pub fn second_hop_means(&self) -> &[f64] {
        &self.second_hop
    }

    pub fn mean_snr_direct(&self) -> f64 {
        self.direct
    }

    fn check_relay(&self, i: usize) -> Result<usize> {
        if (1..=self.relay_count()).contains(&i) {
            Ok(i - 1)
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                max: self.relay_count(),
            })
        }
    }

    pub fn mean_snr_first_hop(&self, i: usize) -> Result<f64> {
        Ok(self.first_hop[self.check_relay(i)?])
    }

    pub fn mean_snr_second_hop(&self, i: usize) -> Result<f64> {
        Ok(self.second_hop[self.check_relay(i)?])
    }

    /// Mean of `min(γ_ik, γ_ki)`: `(1/γ̄_ik + 1/γ̄_ki)⁻¹`.
    pub fn bottleneck_mean(&self, i: usize) -> Result<f64> {
        let k = self.check_relay(i)?;
        Ok(1.0 / (1.0 / self.first_hop[k] + 1.0 / self.second_hop[k]))
    }

    /// Same network with every mean multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.first_hop.iter().map(|m| m * factor).collect(),
            self.second_hop.iter().map(|m| m * factor).collect(),
            self.direct * factor,
        )
    }

    /// Largest of the `2M + 1` means.
    pub fn largest_mean(&self) -> f64 {
        self.first_hop
            .iter()
            .chain(&self.second_hop)
            .fold(self.direct, |acc, &m| acc.max(m))
    }
}

fn check_mean(mean_snr: f64) -> Result<()> {
    if mean_snr.is_finite() && mean_snr > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "mean SNR {mean_snr} is not positive and finite"
        )))
    }
}

/// i.n.i.d. profile with `γ̄_ik = γ̄/i`, `γ̄_ki = γ̄/(2i)` and `γ̄_0 = γ̄/100`.
pub fn preset_fig3(mean_snr: f64, relay_count: usize) -> Result<NetworkConfig> {
    check_mean(mean_snr)?;
    let first = (1..=relay_count).map(|i| mean_snr / i as f64).collect();
    let second = (1..=relay_count)
        .map(|i| mean_snr / (2.0 * i as f64))
        .collect();
    NetworkConfig::new(first, second, mean_snr / 100.0)
}

/// Every link has mean `mean_snr`.
pub fn preset_iid(mean_snr: f64, relay_count: usize) -> Result<NetworkConfig> {
    check_mean(mean_snr)?;
    NetworkConfig::new(
        alloc::vec![mean_snr; relay_count],
        alloc::vec![mean_snr; relay_count],
        mean_snr,
    )
}

/// One draw of all instantaneous SNRs.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    snr_first_hop: Vec<f64>,
    snr_second_hop: Vec<f64>,
    snr_direct: f64,
}

impl ChannelRealization {
    pub fn new(snr_first_hop: Vec<f64>, snr_second_hop: Vec<f64>, snr_direct: f64) -> Result<Self> {
        if snr_first_hop.len() != snr_second_hop.len() || snr_first_hop.is_empty() {
            return Err(Error::InvalidConfig(
                "realization needs equal, non-empty hop lists".into(),
            ));
        }
        let valid = |g: f64| g.is_finite() && g >= 0.0;
        if !snr_first_hop
            .iter()
            .chain(&snr_second_hop)
            .all(|&g| valid(g))
            || !valid(snr_direct)
        {
            return Err(Error::InvalidConfig(
                "instantaneous SNRs must be finite and non-negative".into(),
            ));
        }
        Ok(Self {
            snr_first_hop,
            snr_second_hop,
            snr_direct,
        })
    }

    pub fn relay_count(&self) -> usize {
        self.snr_first_hop.len()
    }

    pub fn snr_first_hop(&self) -> &[f64] {
        &self.snr_first_hop
    }

    pub fn snr_second_hop(&self) -> &[f64] {
        &self.snr_second_hop
    }

    pub fn snr_direct(&self) -> f64 {
        self.snr_direct
    }

    /// `γ_i = min(γ_ik, γ_ki)` for relay `i` in `1..=M`.
    ///
    /// # Panics
    /// If `i` is not a relay index.
    pub fn bottleneck(&self, i: usize) -> f64 {
        self.snr_first_hop[i - 1].min(self.snr_second_hop[i - 1])
    }

    /// Bottleneck SNRs of all relays in index order.
    pub fn bottlenecks(&self) -> impl Iterator<Item = f64> + '_ {
        self.snr_first_hop
            .iter()
            .zip(&self.snr_second_hop)
            .map(|(a, b)| a.min(*b))
    }

    /// Multiplies every SNR by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            snr_first_hop: self.snr_first_hop.iter().map(|g| g * c).collect(),
            snr_second_hop: self.snr_second_hop.iter().map(|g| g * c).collect(),
            snr_direct: self.snr_direct * c,
        }
    }
}

/// Uniform draw on `(0, 1]` with 53 bits of resolution.
#[inline]
pub fn uniform_open_closed<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
    ((rng.next_u64() >> 11) + 1) as f64 * SCALE
}

/// Inverse-CDF exponential draw `-mean · ln(u)`.
#[inline]
pub fn exponential_from_uniform(mean: f64, u: f64) -> f64 {
    -mean * ln(u)
}

/// Draws all `2M + 1` SNRs: first hops in relay order, then second hops,
/// then the direct link.
pub fn sample_realization<R: RngCore + ?Sized>(
    config: &NetworkConfig,
    rng: &mut R,
) -> ChannelRealization {
    let mut draw = |mean: f64| exponential_from_uniform(mean, uniform_open_closed(rng));
    let snr_first_hop = config.first_hop.iter().map(|&m| draw(m)).collect();
    let snr_second_hop = config.second_hop.iter().map(|&m| draw(m)).collect();
    let snr_direct = draw(config.direct);
    ChannelRealization {
        snr_first_hop,
        snr_second_hop,
        snr_direct,
    }
}

fn check_gamma(gamma: f64) -> Result<f64> {
    if gamma >= 0.0 {
        Ok(gamma)
    } else {
        Err(Error::NegativeSnr(gamma))
    }
}

/// CDF of the maximum of independent exponentials, evaluated through its
/// inclusion–exclusion expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxCdf {
    expansion: ProductExpansion,
}

impl MaxCdf {
    /// `γ_M = max_i γ_i` over all relay bottlenecks.
    pub fn max_all(config: &NetworkConfig) -> Result<Self> {
        Self::over(Universe::Bottleneck, config, None)
    }

    /// `γ_M^{(i-)}`, the maximum over all bottlenecks except relay `i`.
    pub fn max_excluding(config: &NetworkConfig, i: usize) -> Result<Self> {
        config.check_relay(i)?;
        Self::over(Universe::Bottleneck, config, Some(i))
    }

    /// `Ω_M^{(l-)}`, the maximum over `{γ_0, γ_k1, .., γ_kM}` without index `l`.
    pub fn omega_max_excluding(config: &NetworkConfig, l: usize) -> Result<Self> {
        Self::over(Universe::Omega, config, Some(l))
    }

    /// Maximum over an arbitrary universe with one index removed.
    pub fn over(
        universe: Universe,
        config: &NetworkConfig,
        exclude: Option<usize>,
    ) -> Result<Self> {
        let members = universe.build(config, exclude)?;
        Ok(Self {
            expansion: ProductExpansion::new(&members)?,
        })
    }

    pub fn expansion(&self) -> &ProductExpansion {
        &self.expansion
    }

    /// CDF at `gamma ≥ 0`.
    pub fn cdf(&self, gamma: f64) -> Result<f64> {
        Ok(self.cdf_unchecked(check_gamma(gamma)?))
    }

    #[inline]
    pub(crate) fn cdf_unchecked(&self, gamma: f64) -> f64 {
        self.expansion.evaluate(gamma).clamp(0.0, 1.0)
    }
}

/// Exponential CDF `1 - e^{-γ/mean}`.
#[inline]
pub(crate) fn exponential_cdf(mean: f64, gamma: f64) -> f64 {
    -libm::expm1(-gamma / mean)
}

/// Exponential density `e^{-γ/mean} / mean`.
#[inline]
pub(crate) fn exponential_pdf(mean: f64, gamma: f64) -> f64 {
    exp(-gamma / mean) / mean
}

/// CDF of the bottleneck SNR of relay `i`.
pub fn cdf_bottleneck(config: &NetworkConfig, i: usize, gamma: f64) -> Result<f64> {
    let mean = config.bottleneck_mean(i)?;
    Ok(exponential_cdf(mean, check_gamma(gamma)?))
}

/// CDF of the largest relay bottleneck SNR.
pub fn cdf_max_all(config: &NetworkConfig, gamma: f64) -> Result<f64> {
    MaxCdf::max_all(config)?.cdf(gamma)
}

/// CDF of the largest bottleneck SNR among relays other than `i`; identically
/// one when `M = 1`.
pub fn cdf_max_excluding(config: &NetworkConfig, i: usize, gamma: f64) -> Result<f64> {
    MaxCdf::max_excluding(config, i)?.cdf(gamma)
}

/// CDF of `max {γ_0, γ_k1, .., γ_kM} \ {index l}`.
pub fn cdf_omega_max_excluding(config: &NetworkConfig, l: usize, gamma: f64) -> Result<f64> {
    MaxCdf::omega_max_excluding(config, l)?.cdf(gamma)
}
