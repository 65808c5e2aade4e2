//! Instantaneous link selection and the capacity of the chosen link.
//!
//! Ties go to the direct link first, then to the lowest relay index.

use crate::channel::ChannelRealization;
use crate::math::log2_1p;

/// Outcome of a selection rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkChoice {
    Direct,
    /// Relay index in `1..=M`.
    Relay(usize),
}

impl LinkChoice {
    /// Position in `[direct, relay 1, .., relay M]`.
    pub fn index(self) -> usize {
        match self {
            LinkChoice::Direct => 0,
            LinkChoice::Relay(i) => i,
        }
    }
}

fn argmax_with_direct(direct: f64, relays: impl Iterator<Item = f64>) -> LinkChoice {
    let mut best = LinkChoice::Direct;
    let mut best_value = direct;
    for (k, value) in relays.enumerate() {
        // strict: the direct link and lower relay indices win ties
        if value > best_value {
            best = LinkChoice::Relay(k + 1);
            best_value = value;
        }
    }
    best
}

/// Largest of `{γ_0, min(γ_1k, γ_k1), .., min(γ_Mk, γ_kM)}`.
pub fn select_full_csi(r: &ChannelRealization) -> LinkChoice {
    argmax_with_direct(r.snr_direct(), r.bottlenecks())
}

/// Largest of `{γ_0, γ_k1, .., γ_kM}`; first-hop SNRs are not observed.
pub fn select_partial_csi(r: &ChannelRealization) -> LinkChoice {
    argmax_with_direct(r.snr_direct(), r.snr_second_hop().iter().copied())
}

/// SNR that governs the capacity of `choice`: the bottleneck for a relay
/// path, `γ_0` for the direct link.
pub fn effective_snr(choice: LinkChoice, r: &ChannelRealization) -> f64 {
    match choice {
        LinkChoice::Direct => r.snr_direct(),
        LinkChoice::Relay(i) => r.bottleneck(i),
    }
}

/// `½ log₂(1 + min(γ_ik, γ_ki))` for a relay, `log₂(1 + γ_0)` for the direct link.
///
/// Under partial CSI the choice ignores `γ_ik`, but the realized rate of a
/// relay path is still limited by its weaker hop.
pub fn instantaneous_capacity(choice: LinkChoice, r: &ChannelRealization) -> f64 {
    match choice {
        LinkChoice::Direct => log2_1p(r.snr_direct()),
        LinkChoice::Relay(i) => 0.5 * log2_1p(r.bottleneck(i)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn example() -> ChannelRealization {
        ChannelRealization::new(vec![3.0, 4.0], vec![5.0, 2.0], 2.5).unwrap()
    }

    #[test]
    fn full_csi_uses_bottlenecks() {
        assert_eq!(select_full_csi(&example()), LinkChoice::Relay(1));
        let r = ChannelRealization::new(vec![3.0, 4.0], vec![5.0, 2.0], 3.5).unwrap();
        assert_eq!(select_full_csi(&r), LinkChoice::Direct);
    }

    #[test]
    fn partial_csi_uses_second_hop() {
        assert_eq!(select_partial_csi(&example()), LinkChoice::Relay(1));
        let r = ChannelRealization::new(vec![9.0, 9.0], vec![1.0, 2.0], 2.5).unwrap();
        assert_eq!(select_partial_csi(&r), LinkChoice::Direct);
        // partial CSI can pick a relay whose first hop is weak
        let r = ChannelRealization::new(vec![0.1, 9.0], vec![8.0, 6.0], 1.0).unwrap();
        assert_eq!(select_partial_csi(&r), LinkChoice::Relay(1));
        assert_eq!(select_full_csi(&r), LinkChoice::Relay(2));
    }

    #[test]
    fn ties() {
        let r = ChannelRealization::new(vec![2.0, 2.0], vec![2.0, 2.0], 2.0).unwrap();
        assert_eq!(select_full_csi(&r), LinkChoice::Direct);
        assert_eq!(select_partial_csi(&r), LinkChoice::Direct);
        let r = ChannelRealization::new(vec![3.0, 3.0], vec![3.0, 3.0], 1.0).unwrap();
        assert_eq!(select_full_csi(&r), LinkChoice::Relay(1));
        assert_eq!(select_partial_csi(&r), LinkChoice::Relay(1));
        let r = ChannelRealization::new(vec![0.0], vec![0.0], 0.0).unwrap();
        assert_eq!(select_full_csi(&r), LinkChoice::Direct);
    }

    #[test]
    fn capacities() {
        let r = ChannelRealization::new(vec![3.0, 4.0], vec![5.0, 2.0], 3.0).unwrap();
        assert!((instantaneous_capacity(LinkChoice::Relay(1), &r) - 1.0).abs() < 1e-15);
        assert!((instantaneous_capacity(LinkChoice::Direct, &r) - 2.0).abs() < 1e-15);
        let r = ChannelRealization::new(vec![0.0], vec![5.0], 3.0).unwrap();
        assert_eq!(instantaneous_capacity(LinkChoice::Relay(1), &r), 0.0);
        assert_eq!(effective_snr(LinkChoice::Relay(1), &r), 0.0);
        assert_eq!(LinkChoice::Relay(3).index(), 3);
        assert_eq!(LinkChoice::Direct.index(), 0);
    }
}
