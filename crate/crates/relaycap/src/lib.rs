//! SNR sweeps over the relay-selection capacity models with CSV output.
//!
//! This crate adds the parts of the tool that need `std`: a rayon-backed
//! Monte Carlo driver that reproduces the sequential result bit for bit,
//! the sweep runner, the key-value config file and the CSV writer used by
//! the `relaycap` binary.

pub mod config;
mod error;
pub mod parallel;
pub mod sweep;

pub use error::SweepError;
pub use sweep::{run_gain, run_sweep, GainRow, Preset, SweepRow, SweepSpec};
