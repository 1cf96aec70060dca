//! Random search for hand sets whose order complex has interesting homology.
//!
//! A trial walks the deck in index order (rank, then suit ♣ ♦ ♥ ♠), keeps
//! each card with probability `p` and pairs consecutive kept cards.
//!
//! Each trial has its own SplitMix64 stream: with
//! `z = seed ^ trial * 0x9E3779B97F4A7C15` (wrapping), the stream starts
//! from the state `splitmix64(z)`, the first SplitMix64 output for state
//! `z`. Card `i` draws the `i`-th output `u` and is kept iff
//! `(u >> 11) * 2^-53 < p`. SplitMix64 here is the standard generator:
//! state += 0x9E3779B97F4A7C15, then the output mix with multipliers
//! 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.

use std::fmt;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cards::{Card, HolePair};
use crate::complex::order_complex;
use crate::equity::{relation_at, MatchupSource, Threshold, TieConvention};
use crate::error::EquityError;
use crate::homology::{homology, HomologyReport};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Which reduced homologies count as a hit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    /// A single `Z` in one degree `>= min_degree` and nothing else.
    SphereLike { min_degree: usize },
    /// Any nontrivial group in some degree `>= min_degree`.
    Nontrivial { min_degree: usize },
}

impl Default for Target {
    fn default() -> Self {
        Target::SphereLike { min_degree: 2 }
    }
}

impl Target {
    pub fn matches(&self, h: &HomologyReport) -> bool {
        let support = h.support();
        match *self {
            Target::SphereLike { min_degree } => {
                support.len() == 1
                    && support[0] >= min_degree
                    && h.groups[support[0]].betti == 1
                    && h.groups[support[0]].torsion.is_empty()
            }
            Target::Nontrivial { min_degree } => support.iter().any(|&d| d >= min_degree),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub keep_probability: f64,
    pub trials: u64,
    /// Trials run are `first_trial..first_trial + trials`, so a search can
    /// be resumed where an earlier one stopped.
    pub first_trial: u64,
    pub seed: u64,
    pub target: Target,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            keep_probability: 0.5,
            trials: 1000,
            first_trial: 0,
            seed: 0,
            target: Target::default(),
        }
    }
}

fn trial_rng(seed: u64, trial: u64) -> SplitMix64 {
    let z = seed ^ trial.wrapping_mul(GOLDEN_GAMMA);
    let mixed = SplitMix64::from_seed(z.to_le_bytes()).next_u64();
    SplitMix64::from_seed(mixed.to_le_bytes())
}

/// The hand set of one trial: a deterministic function of `(seed, trial)`
/// and the keep probability.
pub fn sample_hand_set(cfg: &SearchConfig, trial: u64) -> Vec<HolePair> {
    let mut rng = trial_rng(cfg.seed, trial);
    let kept: Vec<Card> = Card::deck()
        .filter(|_| ((rng.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < cfg.keep_probability)
        .collect();
    kept.chunks_exact(2)
        .map(|c| HolePair::new(c[0], c[1]).expect("distinct cards"))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TrialId {
    Random(u64),
    Forced(usize),
}

impl fmt::Display for TrialId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrialId::Random(t) => write!(f, "{t}"),
            TrialId::Forced(i) => write!(f, "forced-{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hit {
    pub trial: TrialId,
    pub hands: Vec<HolePair>,
    pub report: HomologyReport,
}

impl fmt::Display for Hit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hands: Vec<String> = self.hands.iter().map(ToString::to_string).collect();
        let groups: Vec<String> = self
            .report
            .support()
            .into_iter()
            .map(|k| format!("H{k}={}", self.report.groups[k]))
            .collect();
        write!(f, "{}, {}, {}", self.trial, hands.join(" "), groups.join(" "))
    }
}

/// Reduced homology of the order complex of "beats" on `hands`.
pub fn hand_set_homology(
    hands: &[HolePair],
    source: &dyn MatchupSource,
    tc: TieConvention,
) -> Result<HomologyReport, EquityError> {
    let t = relation_at(source, hands, tc, Threshold::half())?;
    Ok(homology(&order_complex(&t), true))
}

/// Runs the random trials plus any `forced` hand sets and returns the hits
/// ordered by trial.
pub fn search(
    cfg: &SearchConfig,
    source: &dyn MatchupSource,
    tc: TieConvention,
    forced: &[Vec<HolePair>],
) -> Result<Vec<Hit>, EquityError> {
    let random = (cfg.first_trial..cfg.first_trial + cfg.trials)
        .map(|t| (TrialId::Random(t), sample_hand_set(cfg, t)));
    let forced = forced.iter().enumerate().map(|(i, h)| (TrialId::Forced(i), h.clone()));
    let work: Vec<(TrialId, Vec<HolePair>)> = forced.chain(random).collect();
    let mut hits: Vec<Hit> = work
        .into_par_iter()
        .map(|(trial, hands)| {
            let report = hand_set_homology(&hands, source, tc)?;
            Ok(cfg.target.matches(&report).then_some(Hit { trial, hands, report }))
        })
        .collect::<Result<Vec<Option<Hit>>, EquityError>>()?
        .into_iter()
        .flatten()
        .collect();
    hits.sort_by_key(|h| h.trial);
    Ok(hits)
}

/// Recomputes a hit from its hands alone.
pub fn reverify(hit: &Hit, source: &dyn MatchupSource, tc: TieConvention, target: Target) -> Result<bool, EquityError> {
    let report = hand_set_homology(&hit.hands, source, tc)?;
    Ok(report == hit.report && target.matches(&report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keep_all_and_keep_none() {
        let all = SearchConfig {
            keep_probability: 1.0,
            ..SearchConfig::default()
        };
        let hands = sample_hand_set(&all, 7);
        assert_eq!(hands.len(), 26);
        assert_eq!(hands[0].to_string(), "2c2d");
        assert_eq!(hands[25].to_string(), "AhAs");
        let none = SearchConfig {
            keep_probability: 0.0,
            ..SearchConfig::default()
        };
        assert!(sample_hand_set(&none, 7).is_empty());
    }

    #[test]
    fn trials_are_replayable_and_distinct() {
        let cfg = SearchConfig {
            seed: 42,
            ..SearchConfig::default()
        };
        assert_eq!(sample_hand_set(&cfg, 3), sample_hand_set(&cfg, 3));
        assert_ne!(sample_hand_set(&cfg, 3), sample_hand_set(&cfg, 4));
        let other = SearchConfig { seed: 43, ..cfg.clone() };
        assert_ne!(sample_hand_set(&cfg, 3), sample_hand_set(&other, 3));
    }

    #[test]
    fn stream_is_standard_splitmix() {
        // First outputs of SplitMix64 from state 0.
        let mut r = SplitMix64::from_seed(0u64.to_le_bytes());
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn sampled_pairs_are_disjoint_and_increasing() {
        let cfg = SearchConfig {
            seed: 9,
            keep_probability: 0.4,
            ..SearchConfig::default()
        };
        for t in 0..50 {
            let hands = sample_hand_set(&cfg, t);
            for w in hands.windows(2) {
                assert!(w[0].hi() < w[1].lo());
            }
        }
    }
}
