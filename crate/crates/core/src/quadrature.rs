//! Quadrature oracle for the ergodic capacities.
//!
//! The selection-probability integrals are reduced to one-dimensional
//! integrals of `log₂(1+x)` against a density times CDF factors, where the
//! CDF factors come from the inclusion–exclusion path of
//! [`channel`](crate::channel). Integration runs on `[0, U]` with globally
//! adaptive Gauss–Kronrod (7/15) bisection; `U` is chosen so that a
//! closed-form bound on the discarded tail stays below a tenth of the
//! absolute tolerance.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::analytic::CapacityEstimate;
use crate::channel::{exponential_cdf, exponential_pdf, MaxCdf, NetworkConfig};
use crate::combinatorics::{all_subsets, Universe};
use crate::error::{Error, Result};
use crate::math::{abs, exp, ln_1p, log2_1p, LOG2_E};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    pub relative_tolerance: f64,
    pub absolute_tolerance: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            relative_tolerance: 1e-9,
            absolute_tolerance: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> Result<()> {
        let ok = self.relative_tolerance > 0.0
            && self.absolute_tolerance > 0.0
            && self.max_subdivisions >= 10;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(
                "quadrature tolerances must be positive and max_subdivisions ≥ 10".into(),
            ))
        }
    }
}

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        // odd Kronrod nodes coincide with the Gauss nodes
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        lo,
        hi,
        value: kronrod * half,
        error: abs((kronrod - gauss) * half),
    }
}

/// Adaptive integration of `f` over `[lo, hi]`.
///
/// Bisects the segment with the largest error estimate until the summed
/// estimate is below `max(absolute_tolerance, relative_tolerance·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    integrate_with_breakpoints(f, &[lo, hi], settings)
}

/// Like [`integrate`], starting from the segments between consecutive
/// `points` (ascending). Seeding with breakpoints at every relevant scale
/// keeps a narrow feature from slipping between the nodes of one coarse rule.
/// Only bisections count towards `max_subdivisions`.
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    settings: &QuadratureSettings,
) -> Result<f64> {
    settings.validate()?;
    let mut heap: BinaryHeap<Segment> = points
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| gauss_kronrod(&f, w[0], w[1]))
        .collect();
    if heap.is_empty() {
        return Ok(0.0);
    }
    let mut subdivisions = 0;
    loop {
        let (value, error) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        let target = settings
            .absolute_tolerance
            .max(settings.relative_tolerance * abs(value));
        if error <= target {
            return Ok(value);
        }
        if subdivisions >= settings.max_subdivisions {
            return Err(Error::NoConvergence {
                estimate: value,
                error_estimate: error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // segment cannot be split further in floating point
            return Err(Error::NoConvergence {
                estimate: value,
                error_estimate: error,
                subdivisions,
            });
        }
        heap.push(gauss_kronrod(&f, worst.lo, mid));
        heap.push(gauss_kronrod(&f, mid, worst.hi));
        subdivisions += 1;
    }
}

/// `0`, then doubling points from `fine_scale / 64` up to `upper`.
fn geometric_breakpoints(fine_scale: f64, upper: f64) -> Vec<f64> {
    let mut points = alloc::vec![0.0];
    let mut x = fine_scale / 64.0;
    while x < upper {
        points.push(x);
        x *= 2.0;
    }
    points.push(upper);
    points
}

/// Upper bound on `∫_U^∞ log₂(1+x) e^{-x/m}/m dx`.
///
/// Exact value is `log₂e [ln(1+U) e^{-U/m} + e^{1/m} E1((1+U)/m)]`, and
/// `e^{y}E1(y) < 1/y` bounds the second term.
pub fn tail_bound(mean: f64, upper: f64) -> f64 {
    LOG2_E * exp(-upper / mean) * (ln_1p(upper) + mean / (1.0 + upper))
}

/// Truncation point for an integrand dominated by `log₂(1+x)·Exp(mean)` density.
pub fn truncation_point(mean: f64, absolute_tolerance: f64) -> f64 {
    let target = 0.1 * absolute_tolerance;
    let mut upper = 50.0 * mean;
    while tail_bound(mean, upper) > target {
        upper *= 2.0;
    }
    upper
}

/// `∫₀^U log₂(1+x) weight(x) dx`, where `weight` is bounded by an exponential
/// density of mean `decay_mean` and varies on scales no finer than `fine_scale`.
fn integrate_log_weighted<F: Fn(f64) -> f64>(
    weight: F,
    decay_mean: f64,
    fine_scale: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    let upper = truncation_point(decay_mean, settings.absolute_tolerance);
    let points = geometric_breakpoints(fine_scale.min(1.0), upper);
    integrate_with_breakpoints(|x| log2_1p(x) * weight(x), &points, settings)
}

/// Smallest mean of any link or bottleneck; the finest scale any integrand
/// can vary on.
fn finest_scale(config: &NetworkConfig) -> f64 {
    (1..=config.relay_count())
        .filter_map(|i| config.bottleneck_mean(i).ok())
        .chain(config.second_hop_means().iter().copied())
        .fold(config.mean_snr_direct(), f64::min)
}

/// Integrand pieces of the full-CSI capacity.
pub(crate) struct FullCsiIntegrands {
    relays: Vec<(f64, MaxCdf)>,
    direct_mean: f64,
    max_all: MaxCdf,
}

impl FullCsiIntegrands {
    pub(crate) fn new(config: &NetworkConfig) -> Result<Self> {
        let relays = (1..=config.relay_count())
            .map(|i| {
                Ok((
                    config.bottleneck_mean(i)?,
                    MaxCdf::max_excluding(config, i)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            relays,
            direct_mean: config.mean_snr_direct(),
            max_all: MaxCdf::max_all(config)?,
        })
    }

    /// `f_{γ_i}(x) F_{γ^{(i-)}}(x) F_{γ_0}(x)` for relay position `k = i - 1`.
    pub(crate) fn relay_weight(&self, k: usize, x: f64) -> f64 {
        let (mean, ref others) = self.relays[k];
        exponential_pdf(mean, x) * others.cdf_unchecked(x) * exponential_cdf(self.direct_mean, x)
    }

    /// `f_{γ_0}(x) F_{γ_M}(x)`.
    pub(crate) fn direct_weight(&self, x: f64) -> f64 {
        exponential_pdf(self.direct_mean, x) * self.max_all.cdf_unchecked(x)
    }
}

/// `½ Σ_i ∫ log₂(1+x) f_{γ_i} F_{γ^{(i-)}} F_{γ_0} dx + ∫ log₂(1+x) f_{γ_0} F_{γ_M} dx`.
pub fn capacity_full_csi_quadrature(
    config: &NetworkConfig,
    settings: &QuadratureSettings,
) -> Result<CapacityEstimate> {
    let parts = FullCsiIntegrands::new(config)?;
    let fine = finest_scale(config);
    let mut total = 0.0;
    for k in 0..parts.relays.len() {
        let mean = parts.relays[k].0;
        total += 0.5 * integrate_log_weighted(|x| parts.relay_weight(k, x), mean, fine, settings)?;
    }
    total += integrate_log_weighted(
        |x| parts.direct_weight(x),
        parts.direct_mean,
        fine,
        settings,
    )?;
    Ok(CapacityEstimate::quadrature(total))
}

/// Closed form of the inner integral `∫_x^∞ f_{Ω_i}(y) F_{Ω^{(i-)}}(y) dy`:
/// `Σ_{T ⊆ Ω\{i}} (-1)^{|T|} c/(c + ρ_T) e^{-x(c+ρ_T)}` with `c = 1/γ̄_ki`.
#[derive(Debug, Clone)]
pub struct SecondHopTail {
    second_hop_rate: f64,
    terms: Vec<(f64, f64)>,
}

impl SecondHopTail {
    pub fn new(config: &NetworkConfig, i: usize) -> Result<Self> {
        let c = 1.0 / config.mean_snr_second_hop(i)?;
        let others = Universe::Omega.build(config, Some(i))?;
        let terms = all_subsets(&others)
            .map(|t| {
                let rate = c + t.combined_inverse_mean;
                (t.sign() * c / rate, rate)
            })
            .collect();
        Ok(Self {
            second_hop_rate: c,
            terms,
        })
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        let mut sum = crate::NeumaierSum::new();
        sum.add(exp(-x * self.second_hop_rate));
        for &(coef, rate) in &self.terms {
            sum.add(coef * exp(-x * rate));
        }
        sum.value().max(0.0)
    }
}

pub(crate) struct PartialCsiIntegrands {
    relays: Vec<PartialRelay>,
    direct_mean: f64,
    direct_others: MaxCdf,
}

struct PartialRelay {
    first_mean: f64,
    second_mean: f64,
    bottleneck_mean: f64,
    others: MaxCdf,
    tail: SecondHopTail,
}

impl PartialCsiIntegrands {
    pub(crate) fn new(config: &NetworkConfig) -> Result<Self> {
        let relays = (1..=config.relay_count())
            .map(|i| {
                Ok(PartialRelay {
                    first_mean: config.mean_snr_first_hop(i)?,
                    second_mean: config.mean_snr_second_hop(i)?,
                    bottleneck_mean: config.bottleneck_mean(i)?,
                    others: MaxCdf::omega_max_excluding(config, i)?,
                    tail: SecondHopTail::new(config, i)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            relays,
            direct_mean: config.mean_snr_direct(),
            direct_others: MaxCdf::omega_max_excluding(config, 0)?,
        })
    }

    /// Relay selected and its first hop is the bottleneck: `f_{γ_ik}(x) · tail_i(x)`.
    pub(crate) fn first_hop_weight(&self, k: usize, x: f64) -> f64 {
        let r = &self.relays[k];
        exponential_pdf(r.first_mean, x) * r.tail.evaluate(x)
    }

    /// Relay selected and its second hop is the bottleneck:
    /// `f_{Ω_i}(x) F_{Ω^{(i-)}}(x) (1 - F_{γ_ik}(x))`.
    pub(crate) fn second_hop_weight(&self, k: usize, x: f64) -> f64 {
        let r = &self.relays[k];
        exponential_pdf(r.second_mean, x) * r.others.cdf_unchecked(x) * exp(-x / r.first_mean)
    }

    /// `f_{Ω_0}(x) F_{Ω^{(0-)}}(x)`.
    pub(crate) fn direct_weight(&self, x: f64) -> f64 {
        exponential_pdf(self.direct_mean, x) * self.direct_others.cdf_unchecked(x)
    }
}

/// Partial-CSI capacity by quadrature of the three reduced one-dimensional terms.
pub fn capacity_partial_csi_quadrature(
    config: &NetworkConfig,
    settings: &QuadratureSettings,
) -> Result<CapacityEstimate> {
    let parts = PartialCsiIntegrands::new(config)?;
    let fine = finest_scale(config);
    let mut total = 0.0;
    for (k, r) in parts.relays.iter().enumerate() {
        let u = integrate_log_weighted(
            |x| parts.first_hop_weight(k, x),
            r.first_mean,
            fine,
            settings,
        )?;
        // second_hop_weight ≤ (γ̄_i/γ̄_ki) · Exp(γ̄_i) density
        let v = integrate_log_weighted(
            |x| parts.second_hop_weight(k, x),
            r.bottleneck_mean,
            fine,
            settings,
        )?;
        total += 0.5 * (u + v);
    }
    total += integrate_log_weighted(
        |x| parts.direct_weight(x),
        parts.direct_mean,
        fine,
        settings,
    )?;
    Ok(CapacityEstimate::quadrature(total))
}

/// `prelog · E[log₂(1+X)] = prelog · log₂e · ∫₀^∞ (1 - F(x))/(1+x) dx`.
///
/// The half-line is mapped onto `[0, 1)` by `x = t/(1-t)`, so `cdf` only
/// needs a tail that decays faster than `1/x`.
pub fn expected_log_capacity<F: Fn(f64) -> f64>(
    cdf: F,
    prelog: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    let integrand = |t: f64| {
        let x = t / (1.0 - t);
        // (1 - F(x))/(1 + x) · dx/dt with 1 + x = 1/(1 - t)
        (1.0 - cdf(x)) / (1.0 - t)
    };
    // dyadic breakpoints towards both ends cover scales from 1e-12 to 1e12
    let mut points: Vec<f64> = (1..=40).rev().map(|k| libm::ldexp(1.0, -k)).collect();
    points.insert(0, 0.0);
    points.extend((2..=40).map(|k| 1.0 - libm::ldexp(1.0, -k)));
    points.push(1.0);
    let value = integrate_with_breakpoints(integrand, &points, settings)?;
    Ok(prelog * LOG2_E * value)
}

/// Capacity of always using the direct link, by quadrature.
pub fn capacity_direct_only_quadrature(
    config: &NetworkConfig,
    settings: &QuadratureSettings,
) -> Result<CapacityEstimate> {
    let mean = config.mean_snr_direct();
    let v = expected_log_capacity(|x| exponential_cdf(mean, x), 1.0, settings)?;
    Ok(CapacityEstimate::quadrature(v))
}
