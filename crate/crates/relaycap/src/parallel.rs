//! Multi-threaded Monte Carlo with results identical to the sequential path.

use rayon::prelude::*;
use relaycap_core::montecarlo::{frequencies, merge_blocks, SimulationPlan};
use relaycap_core::{CapacityEstimate, Error, Scheme};

/// Runs `f` on a dedicated pool of `workers` threads, or on the global pool
/// when `workers` is `None`.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("failed to build thread pool")
            .install(f),
        None => f(),
    }
}

/// Parallel over reduction blocks; blocks are merged in index order.
pub fn estimate_capacity(plan: &SimulationPlan) -> CapacityEstimate {
    let blocks: Vec<_> = (0..plan.block_count())
        .into_par_iter()
        .map(|b| plan.run_block(b))
        .collect();
    merge_blocks(&blocks).into_estimate()
}

pub fn empirical_selection_distribution(plan: &SimulationPlan) -> Result<Vec<f64>, Error> {
    if plan.scheme == Scheme::Direct {
        return Err(Error::InvalidConfig(
            "selection distribution needs the full or partial scheme".into(),
        ));
    }
    let counts = (0..plan.block_count())
        .into_par_iter()
        .map(|b| plan.count_block(b))
        .reduce(
            || vec![0u64; plan.config.relay_count() + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(frequencies(&counts))
}
