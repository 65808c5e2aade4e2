//! Inclusion–exclusion subset sums.
//!
//! The CDF of the maximum of independent exponentials with means `m_j` is
//! `Π_j (1 - e^{-γ/m_j}) = 1 + Σ_{T≠∅} (-1)^{|T|} e^{-γ Σ_{j∈T} 1/m_j}`.
//! Every closed form in this crate is a sum over such subsets `T`, drawn
//! from one of three index universes (see [`Universe`]). Index `0` always
//! denotes the direct link and `1..=M` the relays.

use alloc::vec::Vec;

use crate::channel::NetworkConfig;
use crate::error::{Error, Result};
use crate::math::exp;
use crate::NeumaierSum;

/// Largest supported relay count; a universe has at most `MAX_RELAYS + 1`
/// members, i.e. about 2·10⁶ subsets.
pub const MAX_RELAYS: usize = 20;

/// One subset of a universe together with its combined rate
/// `Σ_{j∈T} 1/mean_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetTerm {
    pub indices: Vec<usize>,
    pub combined_inverse_mean: f64,
}

impl SubsetTerm {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// `(-1)^{|T|}`
    pub fn sign(&self) -> f64 {
        if self.indices.len().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }
}

/// Lexicographic iterator over all `size`-element subsets of a universe.
#[derive(Debug, Clone)]
pub struct Subsets {
    members: Vec<(usize, f64)>,
    positions: Vec<usize>,
    done: bool,
}

/// Enumerates every `size`-subset of `universe` exactly once, in
/// lexicographic order of the (sorted) link indices.
///
/// A size of zero or larger than the universe yields nothing, which is how a
/// vanishing sum such as the size-`M` sum over `M - 1` survivors shows up.
pub fn subsets_of_size(universe: &[(usize, f64)], size: usize) -> Subsets {
    let mut members = universe.to_vec();
    members.sort_by_key(|&(index, _)| index);
    let done = size == 0 || size > members.len();
    Subsets {
        members,
        positions: (0..size).collect(),
        done,
    }
}

impl Iterator for Subsets {
    type Item = SubsetTerm;

    fn next(&mut self) -> Option<SubsetTerm> {
        if self.done {
            return None;
        }
        let mut rate = NeumaierSum::new();
        let mut indices = Vec::with_capacity(self.positions.len());
        for &p in &self.positions {
            let (index, mean) = self.members[p];
            indices.push(index);
            rate.add(1.0 / mean);
        }
        let term = SubsetTerm {
            indices,
            combined_inverse_mean: rate.value(),
        };

        // advance to the next combination
        let n = self.members.len();
        let k = self.positions.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.positions[i] < n - k + i {
                self.positions[i] += 1;
                for j in i + 1..k {
                    self.positions[j] = self.positions[j - 1] + 1;
                }
                break;
            }
        }
        Some(term)
    }
}

/// Index universes feeding the subset sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Universe {
    /// Relay bottleneck means `γ̄_1..γ̄_M` (indices `1..=M`).
    Bottleneck,
    /// Direct mean `γ̄_0` plus the relay bottleneck means (indices `0..=M`);
    /// the universe of the full-CSI relay terms.
    BottleneckWithDirect,
    /// Direct mean plus the second-hop means `γ̄_k1..γ̄_kM` (indices `0..=M`);
    /// the universe of every partial-CSI term.
    Omega,
}

impl Universe {
    /// Members of this universe for `config`, minus `exclude` if given.
    pub fn build(
        self,
        config: &NetworkConfig,
        exclude: Option<usize>,
    ) -> Result<Vec<(usize, f64)>> {
        let m = config.relay_count();
        let (lowest, mut members) = match self {
            Universe::Bottleneck => (1, Vec::with_capacity(m)),
            Universe::BottleneckWithDirect | Universe::Omega => {
                let mut v = Vec::with_capacity(m + 1);
                v.push((0, config.mean_snr_direct()));
                (0, v)
            }
        };
        if let Some(index) = exclude {
            if index < lowest || index > m {
                return Err(Error::IndexOutOfRange { index, max: m });
            }
        }
        for i in 1..=m {
            let mean = match self {
                Universe::Bottleneck | Universe::BottleneckWithDirect => {
                    config.bottleneck_mean(i)?
                }
                Universe::Omega => config.mean_snr_second_hop(i)?,
            };
            members.push((i, mean));
        }
        if let Some(index) = exclude {
            members.retain(|&(j, _)| j != index);
        }
        Ok(members)
    }
}

/// Relay bottleneck universe (`include_direct = false`) or Ω universe
/// (`include_direct = true`) with `exclude` removed.
pub fn excluded_universe(
    config: &NetworkConfig,
    exclude: Option<usize>,
    include_direct: bool,
) -> Result<Vec<(usize, f64)>> {
    let kind = if include_direct {
        Universe::Omega
    } else {
        Universe::Bottleneck
    };
    kind.build(config, exclude)
}

/// All non-empty subsets of a universe, grouped by increasing size.
pub fn all_subsets(universe: &[(usize, f64)]) -> impl Iterator<Item = SubsetTerm> + '_ {
    (1..=universe.len()).flat_map(move |size| subsets_of_size(universe, size))
}

/// Precomputed inclusion–exclusion expansion of `Π_j (1 - e^{-γ/m_j})`.
///
/// Holds `(sign, rate)` for each non-empty subset so the product CDF can be
/// evaluated repeatedly (quadrature inner loops) without re-enumerating.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductExpansion {
    terms: Vec<(f64, f64)>,
}

impl ProductExpansion {
    pub fn new(universe: &[(usize, f64)]) -> Result<Self> {
        if universe.len() > MAX_RELAYS + 1 {
            return Err(Error::TooManyLinks {
                count: universe.len(),
                limit: MAX_RELAYS + 1,
            });
        }
        let terms = all_subsets(universe)
            .map(|t| (t.sign(), t.combined_inverse_mean))
            .collect();
        Ok(Self { terms })
    }

    /// `(sign, combined rate)` per subset.
    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    /// `1 + Σ_T (-1)^{|T|} e^{-γ·rate_T}`; equals `1` for an empty universe.
    pub fn evaluate(&self, gamma: f64) -> f64 {
        let mut sum = NeumaierSum::new();
        sum.add(1.0);
        for &(sign, rate) in &self.terms {
            sum.add(sign * exp(-gamma * rate));
        }
        sum.value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn single_pair_subset() {
        let terms: Vec<_> = subsets_of_size(&[(1, 2.0), (2, 4.0)], 2).collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].indices, vec![1, 2]);
        assert_eq!(terms[0].combined_inverse_mean, 0.75);
    }

    #[test]
    fn counts_match_binomial_and_are_lexicographic() {
        let universe: Vec<_> = (1..=6).map(|i| (i, i as f64)).collect();
        for size in 1..=6 {
            let terms: Vec<_> = subsets_of_size(&universe, size).collect();
            assert_eq!(terms.len(), binomial(6, size));
            for w in terms.windows(2) {
                assert!(w[0].indices < w[1].indices);
            }
            for t in &terms {
                assert!(t.indices.windows(2).all(|p| p[0] < p[1]));
            }
        }
        assert_eq!(subsets_of_size(&universe, 0).count(), 0);
        assert_eq!(subsets_of_size(&universe, 7).count(), 0);
        assert_eq!(subsets_of_size(&[], 1).count(), 0);
    }

    #[test]
    fn three_choose_two() {
        let universe = [(1, 1.0), (2, 2.0), (3, 3.0)];
        assert_eq!(subsets_of_size(&universe, 2).count(), 3);
    }

    #[test]
    fn unsorted_universe_is_enumerated_in_index_order() {
        let universe = [(3, 1.0), (0, 2.0), (2, 3.0)];
        let first: Vec<_> = subsets_of_size(&universe, 2).map(|t| t.indices).collect();
        assert_eq!(first, vec![vec![0, 2], vec![0, 3], vec![2, 3]]);
    }

    #[test]
    fn signed_counts_telescope() {
        let universe: Vec<_> = (1..=4).map(|i| (i, 1.0)).collect();
        let total: i64 = (1..=4)
            .map(|m| {
                let c = subsets_of_size(&universe, m).count() as i64;
                if m % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum();
        assert_eq!(total, -1);
    }

    #[test]
    fn universes_and_exclusions() {
        let config = NetworkConfig::new(vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0], 5.0).unwrap();
        let u = excluded_universe(&config, Some(2), false).unwrap();
        assert_eq!(u.iter().map(|p| p.0).collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(u[0].1, 0.5);

        let config = NetworkConfig::new(vec![1.0, 2.0], vec![7.0, 8.0], 5.0).unwrap();
        let u = excluded_universe(&config, Some(0), true).unwrap();
        assert_eq!(u, vec![(1, 7.0), (2, 8.0)]);
        let u = excluded_universe(&config, Some(1), true).unwrap();
        assert_eq!(u, vec![(0, 5.0), (2, 8.0)]);

        let u = Universe::BottleneckWithDirect
            .build(&config, Some(2))
            .unwrap();
        assert_eq!(u.len(), 2);
        assert_eq!(u[0], (0, 5.0));
        assert_eq!(u[1].0, 1);
        assert!((u[1].1 - 1.0 / (1.0 + 1.0 / 7.0)).abs() < 1e-15);

        assert!(excluded_universe(&config, Some(0), false).is_err());
        assert!(excluded_universe(&config, Some(3), true).is_err());
        assert_eq!(excluded_universe(&config, None, true).unwrap().len(), 3);
    }

    #[test]
    fn empty_expansion_is_one() {
        let e = ProductExpansion::new(&[]).unwrap();
        assert!(e.terms().is_empty());
        assert_eq!(e.evaluate(3.0), 1.0);
    }

    #[test]
    fn oversized_universe_rejected() {
        let universe: Vec<_> = (0..=MAX_RELAYS + 1).map(|i| (i, 1.0)).collect();
        assert!(matches!(
            ProductExpansion::new(&universe),
            Err(Error::TooManyLinks { .. })
        ));
    }
}
