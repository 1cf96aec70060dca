//! Exact head-to-head equities.
//!
//! For two disjoint hole pairs every one of the `C(48, 5) = 1_712_304`
//! boards is enumerated and both seven-card hands are ranked. Counts are
//! kept as integers; probabilities are exact rationals derived on demand.

pub mod matrix;

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::cards::{canonical_matchup, Card, HolePair};
use crate::complex::Tournament;
use crate::error::EquityError;
use crate::evaluator::{evaluate_lanes, lane_bit};
use crate::probability::{half, parse_probability, Probability};

pub use matrix::{canonical_classes, closest_call, full_matrix, ClosestCall, CountsMatrix, MatrixJob};

/// `C(48, 5)`.
pub const TOTAL_BOARDS: u32 = 1_712_304;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatchupCount {
    pub wins: u32,
    pub ties: u32,
    pub losses: u32,
}

impl MatchupCount {
    pub fn new(wins: u32, ties: u32, losses: u32) -> Self {
        MatchupCount { wins, ties, losses }
    }

    pub fn total(&self) -> u64 {
        u64::from(self.wins) + u64::from(self.ties) + u64::from(self.losses)
    }

    /// A full enumeration for disjoint pairs.
    pub fn is_complete(&self) -> bool {
        self.total() == u64::from(TOTAL_BOARDS)
    }

    /// Counts from the other player's seat.
    pub fn reversed(&self) -> Self {
        MatchupCount {
            wins: self.losses,
            ties: self.ties,
            losses: self.wins,
        }
    }
}

impl fmt::Display for MatchupCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w={} t={} l={}", self.wins, self.ties, self.losses)
    }
}

/// How ties enter a winning probability.
///
/// Split ties are the default: only they reproduce the published equities
/// (A♣2♣ beats 3♣5♣ at 0.5908 and 3♣5♣ beats 2♦2♥ at 0.5035; under strict
/// wins the latter drops to 0.486 and the three-hand cycle disappears).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TieConvention {
    /// `w / (w + t + l)`
    StrictWin,
    /// `(w + t/2) / (w + t + l)`
    #[default]
    SplitTie,
}

impl TieConvention {
    pub fn name(self) -> &'static str {
        match self {
            TieConvention::StrictWin => "strict-win",
            TieConvention::SplitTie => "split-tie",
        }
    }
}

impl std::str::FromStr for TieConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" | "strict-win" => Ok(TieConvention::StrictWin),
            "split" | "split-tie" => Ok(TieConvention::SplitTie),
            other => Err(format!("unknown tie convention {other:?} (strict-win or split-tie)")),
        }
    }
}

/// # Panics
/// On an all-zero count (no boards).
pub fn win_probability(c: &MatchupCount, tc: TieConvention) -> Probability {
    let total = c.total();
    assert!(total > 0, "no boards counted");
    match tc {
        TieConvention::StrictWin => Probability::new(u64::from(c.wins), total),
        TieConvention::SplitTie => Probability::new(2 * u64::from(c.wins) + u64::from(c.ties), 2 * total),
    }
}

/// A threshold `p` in `[1/2, 1]`. At exactly 1/2 a matchup must be won with
/// probability strictly above 1/2; above 1/2 it must reach `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Threshold(Probability);

impl Threshold {
    pub fn new(p: Probability) -> Result<Self, EquityError> {
        if p < half() || p > Probability::from_integer(1) {
            return Err(EquityError::Threshold(format!("{p}")));
        }
        Ok(Threshold(p))
    }

    pub fn half() -> Self {
        Threshold(half())
    }

    pub fn parse(s: &str) -> Result<Self, EquityError> {
        let p = parse_probability(s).ok_or_else(|| EquityError::Threshold(s.to_string()))?;
        Threshold::new(p)
    }

    pub fn value(&self) -> Probability {
        self.0
    }

    #[inline]
    pub fn admits(&self, prob: &Probability) -> bool {
        if self.0 == half() {
            *prob > self.0
        } else {
            *prob >= self.0
        }
    }
}

fn overlap_error(a: HolePair, b: HolePair) -> EquityError {
    let cards: Vec<Card> = a.cards().into_iter().filter(|c| b.cards().contains(c)).collect();
    EquityError::Overlap { a, b, cards }
}

/// The 48 cards not held by either player, in index order.
fn residual_cards(a: HolePair, b: HolePair) -> Vec<Card> {
    let used = a.mask() | b.mask();
    Card::deck().filter(|c| used & (1u64 << c.index()) == 0).collect()
}

/// Exact win/tie/loss counts for `a` against `b` over every board.
pub fn matchup_counts(a: HolePair, b: HolePair) -> Result<MatchupCount, EquityError> {
    if a.overlaps(b) {
        return Err(overlap_error(a, b));
    }
    Ok(count_boards(a, b, &residual_cards(a, b)))
}

/// Enumerates the 5-subsets of `residual` in colex order: the outer loop
/// picks the largest position.
pub(crate) fn count_boards(a: HolePair, b: HolePair, residual: &[Card]) -> MatchupCount {
    let bits: Vec<u64> = residual.iter().map(|&c| lane_bit(c)).collect();
    let ka = lane_bit(a.lo()) | lane_bit(a.hi());
    let kb = lane_bit(b.lo()) | lane_bit(b.hi());
    let n = bits.len();
    let (mut wins, mut ties, mut losses) = (0u32, 0u32, 0u32);
    for e in 4..n {
        let k4 = bits[e];
        for d in 3..e {
            let k3 = k4 | bits[d];
            for c in 2..d {
                let k2 = k3 | bits[c];
                for bb in 1..c {
                    let k1 = k2 | bits[bb];
                    for &x in &bits[..bb] {
                        let board = k1 | x;
                        let va = evaluate_lanes(board | ka);
                        let vb = evaluate_lanes(board | kb);
                        wins += u32::from(va > vb);
                        losses += u32::from(va < vb);
                        ties += u32::from(va == vb);
                    }
                }
            }
        }
    }
    MatchupCount { wins, ties, losses }
}

/// Anything that can answer "how does `a` fare against `b`".
pub trait MatchupSource: Sync {
    fn counts(&self, a: HolePair, b: HolePair) -> Result<MatchupCount, EquityError>;
}

/// Enumerates on demand and caches one result per suit class.
#[derive(Debug, Default)]
pub struct LiveMatchups {
    cache: Mutex<HashMap<(HolePair, HolePair), MatchupCount>>,
}

impl LiveMatchups {
    pub fn new() -> Self {
        Self::default()
    }
}

impl MatchupSource for LiveMatchups {
    fn counts(&self, a: HolePair, b: HolePair) -> Result<MatchupCount, EquityError> {
        let (ca, cb, _) = canonical_matchup(a, b).map_err(|_| overlap_error(a, b))?;
        if let Some(c) = self.cache.lock().expect("cache lock").get(&(ca, cb)) {
            return Ok(*c);
        }
        let (ra, rb, _) = canonical_matchup(b, a).map_err(|_| overlap_error(a, b))?;
        if let Some(c) = self.cache.lock().expect("cache lock").get(&(ra, rb)) {
            return Ok(c.reversed());
        }
        let c = matchup_counts(ca, cb)?;
        self.cache.lock().expect("cache lock").insert((ca, cb), c);
        Ok(c)
    }
}

/// Does `a` beat `b` at the given threshold?
pub fn beats(
    a: HolePair,
    b: HolePair,
    source: &dyn MatchupSource,
    tc: TieConvention,
    threshold: Threshold,
) -> Result<bool, EquityError> {
    let c = source.counts(a, b)?;
    Ok(threshold.admits(&win_probability(&c, tc)))
}

/// Tournament on `vertices` with an edge `u -> v` whenever `u` beats `v`,
/// labelled by the pairs' text form and carrying exact probabilities.
pub fn relation_at(
    source: &dyn MatchupSource,
    vertices: &[HolePair],
    tc: TieConvention,
    threshold: Threshold,
) -> Result<Tournament, EquityError> {
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            if a.overlaps(b) {
                return Err(overlap_error(a, b));
            }
        }
    }
    let mut t = Tournament::new(vertices.iter().map(|p| p.to_string()))?;
    for (i, &a) in vertices.iter().enumerate() {
        for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
            let c = source.counts(a, b)?;
            let fwd = win_probability(&c, tc);
            let back = win_probability(&c.reversed(), tc);
            if threshold.admits(&fwd) {
                t.add_edge(i, j, Some(fwd))?;
            } else if threshold.admits(&back) {
                t.add_edge(j, i, Some(back))?;
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn pair(s: &str) -> HolePair {
        s.parse().unwrap()
    }

    #[test]
    fn probability_conventions() {
        let even = MatchupCount::new(5, 5, 5);
        assert_eq!(win_probability(&even, TieConvention::SplitTie), half());
        assert_eq!(win_probability(&even, TieConvention::StrictWin), Ratio::new(1, 3));
        let sweep = MatchupCount::new(TOTAL_BOARDS, 0, 0);
        assert_eq!(win_probability(&sweep, TieConvention::StrictWin), Ratio::from_integer(1));
        assert_eq!(win_probability(&sweep, TieConvention::SplitTie), Ratio::from_integer(1));
        let c = MatchupCount::new(7, 3, 11);
        let sum = win_probability(&c, TieConvention::SplitTie) + win_probability(&c.reversed(), TieConvention::SplitTie);
        assert_eq!(sum, Ratio::from_integer(1));
    }

    #[test]
    fn thresholds() {
        assert!(Threshold::parse("0.49").is_err());
        assert!(Threshold::parse("1.01").is_err());
        let h = Threshold::half();
        assert!(!h.admits(&half()));
        assert!(h.admits(&Ratio::new(50007, 100000)));
        let t = Threshold::parse("0.51").unwrap();
        assert!(!t.admits(&Ratio::new(50007, 100000)));
        assert!(t.admits(&Ratio::new(51, 100)));
    }

    #[test]
    fn overlap_lists_shared_cards() {
        let err = matchup_counts(pair("AcKd"), pair("AcQh")).unwrap_err();
        match err {
            EquityError::Overlap { cards, .. } => assert_eq!(cards, vec!["Ac".parse().unwrap()]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn relation_rejects_overlapping_vertices() {
        let src = LiveMatchups::new();
        let err = relation_at(&src, &[pair("AcKd"), pair("KdQh")], TieConvention::StrictWin, Threshold::half());
        assert!(matches!(err, Err(EquityError::Overlap { .. })));
    }

    #[test]
    fn tie_convention_parsing() {
        assert_eq!("split".parse::<TieConvention>(), Ok(TieConvention::SplitTie));
        assert_eq!("strict-win".parse::<TieConvention>(), Ok(TieConvention::StrictWin));
        assert!("x".parse::<TieConvention>().is_err());
    }
}
