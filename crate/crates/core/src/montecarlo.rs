//! Monte Carlo estimation of ergodic capacity.
//!
//! Realization `k` of a plan is drawn from its own ChaCha8 stream: the key
//! is derived from the plan seed and the stream id is `k`, so any subset of
//! realizations can be generated independently and in any order.
//! Realizations are grouped into fixed blocks of [`BLOCK_LEN`] indices;
//! block statistics are merged strictly in block order, which makes the
//! result bit-identical however the blocks are scheduled.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::analytic::CapacityEstimate;
use crate::channel::{sample_realization, ChannelRealization, NetworkConfig};
use crate::error::{Error, Result};
use crate::math::sqrt;
use crate::selection::{instantaneous_capacity, select_full_csi, select_partial_csi, LinkChoice};

/// Realizations per reduction block.
pub const BLOCK_LEN: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Full,
    Partial,
    Direct,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Full, Scheme::Partial, Scheme::Direct];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Full => "full",
            Scheme::Partial => "partial",
            Scheme::Direct => "direct",
        }
    }

    pub fn select(self, r: &ChannelRealization) -> LinkChoice {
        match self {
            Scheme::Full => select_full_csi(r),
            Scheme::Partial => select_partial_csi(r),
            Scheme::Direct => LinkChoice::Direct,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Scheme::Full),
            "partial" => Ok(Scheme::Partial),
            "direct" => Ok(Scheme::Direct),
            other => Err(Error::InvalidConfig(alloc::format!(
                "unknown scheme {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationPlan {
    pub config: NetworkConfig,
    pub scheme: Scheme,
    pub samples: u64,
    pub seed: u64,
}

impl SimulationPlan {
    pub fn new(config: NetworkConfig, scheme: Scheme, samples: u64, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::InvalidConfig("samples must be at least 1".into()));
        }
        Ok(Self {
            config,
            scheme,
            samples,
            seed,
        })
    }

    pub fn block_count(&self) -> u64 {
        self.samples.div_ceil(BLOCK_LEN)
    }

    fn block_range(&self, block: u64) -> core::ops::Range<u64> {
        let start = block * BLOCK_LEN;
        start..(start + BLOCK_LEN).min(self.samples)
    }

    fn base_stream(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// Channel realization number `k` of this plan.
    pub fn realization(&self, k: u64) -> ChannelRealization {
        let mut rng = self.base_stream();
        rng.set_stream(k);
        sample_realization(&self.config, &mut rng)
    }

    /// Running statistics of the capacities in block `block`.
    pub fn run_block(&self, block: u64) -> RunningStats {
        let base = self.base_stream();
        let mut stats = RunningStats::default();
        for k in self.block_range(block) {
            let mut rng = base.clone();
            rng.set_stream(k);
            let r = sample_realization(&self.config, &mut rng);
            stats.push(instantaneous_capacity(self.scheme.select(&r), &r));
        }
        stats
    }

    /// Selection counts `[direct, relay 1, .., relay M]` in block `block`.
    pub fn count_block(&self, block: u64) -> Vec<u64> {
        let base = self.base_stream();
        let mut counts = vec![0u64; self.config.relay_count() + 1];
        for k in self.block_range(block) {
            let mut rng = base.clone();
            rng.set_stream(k);
            let r = sample_realization(&self.config, &mut rng);
            counts[self.scheme.select(&r).index()] += 1;
        }
        counts
    }
}

/// Count, mean and sum of squared deviations (Welford), mergeable with
/// Chan's pairwise update.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &RunningStats) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let delta = other.mean - self.mean;
        let wa = self.count as f64;
        let wb = other.count as f64;
        self.mean += delta * wb / n;
        self.m2 += other.m2 + delta * delta * wa * wb / n;
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance; zero for fewer than two samples.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            sqrt(self.variance() / self.count as f64)
        }
    }

    pub fn into_estimate(self) -> CapacityEstimate {
        CapacityEstimate::monte_carlo(self.mean, self.std_error(), self.count)
    }
}

/// Merges per-block statistics in block order.
pub fn merge_blocks<'a>(blocks: impl IntoIterator<Item = &'a RunningStats>) -> RunningStats {
    blocks
        .into_iter()
        .fold(RunningStats::default(), |mut acc, b| {
            acc.merge(b);
            acc
        })
}

/// Sequential estimate; identical to any parallel evaluation that merges
/// the same blocks in order.
pub fn estimate_capacity(plan: &SimulationPlan) -> CapacityEstimate {
    let blocks: Vec<_> = (0..plan.block_count()).map(|b| plan.run_block(b)).collect();
    merge_blocks(&blocks).into_estimate()
}

/// Turns summed selection counts into frequencies.
pub fn frequencies(counts: &[u64]) -> Vec<f64> {
    let total: u64 = counts.iter().sum();
    counts.iter().map(|&c| c as f64 / total as f64).collect()
}

/// Empirical probability of each link being selected, `[direct, relay 1, ..]`.
pub fn empirical_selection_distribution(plan: &SimulationPlan) -> Result<Vec<f64>> {
    if plan.scheme == Scheme::Direct {
        return Err(Error::InvalidConfig(
            "selection distribution needs the full or partial scheme".into(),
        ));
    }
    let mut counts = vec![0u64; plan.config.relay_count() + 1];
    for b in 0..plan.block_count() {
        for (acc, c) in counts.iter_mut().zip(plan.count_block(b)) {
            *acc += c;
        }
    }
    Ok(frequencies(&counts))
}
