//! Ergodic capacity of transmission-link selection in a dual-hop
//! decode-and-forward network with `M` relays and a direct link over
//! independent, non-identically distributed Rayleigh fading.
//!
//! Two selection rules are covered:
//!
//! * **full CSI**: pick the link with the largest end-to-end SNR, where a
//!   relay path counts with its bottleneck `min(first hop, second hop)`;
//! * **partial CSI**: pick by comparing only the relay-to-destination SNRs
//!   with the direct SNR.
//!
//! Every capacity is available three ways: closed form ([`analytic`]),
//! one-dimensional adaptive quadrature ([`quadrature`]) and Monte Carlo
//! simulation ([`montecarlo`]). The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod analytic;
pub mod channel;
pub mod combinatorics;
mod error;
mod math;
pub mod montecarlo;
pub mod quadrature;
pub mod selection;
pub mod special;

pub use analytic::{CapacityEstimate, Method};
pub use channel::{ChannelRealization, NetworkConfig};
pub use error::{Error, Result};
pub use math::NeumaierSum;
pub use montecarlo::{Scheme, SimulationPlan};
pub use quadrature::QuadratureSettings;
pub use selection::LinkChoice;
