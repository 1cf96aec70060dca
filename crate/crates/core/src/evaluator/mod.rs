//! Poker hand ranking.
//!
//! [`rank5`] and [`rank7`] share a branch-light evaluator that works on a
//! "lane key": a `u64` holding four 13-bit rank masks, one 16-bit lane per
//! suit. Flushes are read off a single lane, pairs and trips off the
//! pairwise and triple intersections of the lanes.
//!
//! [`oracle`] holds a second, deliberately naive implementation used to
//! check this one.

pub mod oracle;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cards::Card;
use crate::error::EvalError;

pub use oracle::{rank5_oracle, rank7_oracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    HighCard = 0,
    Pair = 1,
    TwoPair = 2,
    Trips = 3,
    Straight = 4,
    Flush = 5,
    FullHouse = 6,
    Quads = 7,
    StraightFlush = 8,
}

impl Category {
    pub const ALL: [Category; 9] = [
        Category::HighCard,
        Category::Pair,
        Category::TwoPair,
        Category::Trips,
        Category::Straight,
        Category::Flush,
        Category::FullHouse,
        Category::Quads,
        Category::StraightFlush,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::HighCard => "high card",
            Category::Pair => "pair",
            Category::TwoPair => "two pair",
            Category::Trips => "three of a kind",
            Category::Straight => "straight",
            Category::Flush => "flush",
            Category::FullHouse => "full house",
            Category::Quads => "four of a kind",
            Category::StraightFlush => "straight flush",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A hand's strength. Layout: category in bits 20..24, then up to five
/// 4-bit tiebreak ranks (most significant first, zero padded). Comparing the
/// packed integers compares the hands.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HandValue(u32);

impl HandValue {
    /// Packs a category and its tiebreak ranks (at most five, each 2..=14).
    pub fn from_parts(category: Category, tiebreak: &[u8]) -> HandValue {
        assert!(tiebreak.len() <= 5, "at most five tiebreak ranks");
        let mut packed = (category as u32) << 20;
        for (i, &r) in tiebreak.iter().enumerate() {
            debug_assert!((2..=14).contains(&r));
            packed |= u32::from(r) << (16 - 4 * i);
        }
        HandValue(packed)
    }

    #[inline]
    pub fn packed(self) -> u32 {
        self.0
    }

    pub fn category(self) -> Category {
        Category::ALL[(self.0 >> 20) as usize]
    }

    /// Tiebreak ranks by significance, e.g. `[trips, pair]` for a full house.
    pub fn tiebreak(self) -> Vec<u8> {
        (0..5)
            .map(|i| ((self.0 >> (16 - 4 * i)) & 0xf) as u8)
            .take_while(|&r| r != 0)
            .collect()
    }
}

impl fmt::Display for HandValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.category())?;
        let ranks: Vec<String> = self.tiebreak().into_iter().map(rank_name).collect();
        if !ranks.is_empty() {
            write!(f, " [{}]", ranks.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for HandValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HandValue({:#08x}: {})", self.0, self)
    }
}

pub fn rank_name(rank: u8) -> String {
    match rank {
        10 => "T".into(),
        11 => "J".into(),
        12 => "Q".into(),
        13 => "K".into(),
        14 => "A".into(),
        r => r.to_string(),
    }
}

/// Lane bit of a card: suit selects the 16-bit lane, rank the bit within it.
#[inline]
pub fn lane_bit(card: Card) -> u64 {
    1u64 << (16 * u32::from(card.suit()) + u32::from(card.rank() - 2))
}

pub fn lane_key(cards: &[Card]) -> Result<u64, EvalError> {
    let mut key = 0u64;
    for &c in cards {
        let bit = lane_bit(c);
        if key & bit != 0 {
            return Err(EvalError::DuplicateCard(c));
        }
        key |= bit;
    }
    Ok(key)
}

/// Best five-card hand among 5 to 7 distinct cards.
pub fn rank(cards: &[Card]) -> Result<HandValue, EvalError> {
    if !(5..=7).contains(&cards.len()) {
        return Err(EvalError::CardCount(cards.len()));
    }
    Ok(evaluate_lanes(lane_key(cards)?))
}

pub fn rank5(cards: &[Card; 5]) -> Result<HandValue, EvalError> {
    Ok(evaluate_lanes(lane_key(cards)?))
}

pub fn rank7(cards: &[Card; 7]) -> Result<HandValue, EvalError> {
    Ok(evaluate_lanes(lane_key(cards)?))
}

const LANE: u64 = 0x1fff;

#[inline]
fn top(mask: u32) -> u8 {
    debug_assert!(mask != 0);
    (31 - mask.leading_zeros()) as u8
}

#[inline]
fn bit(rank_bit: u8) -> u32 {
    1 << rank_bit
}

#[inline]
fn straight_high(mask: u32) -> Option<u8> {
    // Shift up one so bit 0 can hold the ace playing low.
    let m = (mask << 1) | ((mask >> 12) & 1);
    let runs = m & (m >> 1) & (m >> 2) & (m >> 3) & (m >> 4);
    if runs == 0 {
        None
    } else {
        Some(top(runs) + 5)
    }
}

/// Fills tiebreak slots `slot..slot + n` with the highest ranks left in `mask`.
#[inline]
fn pack_top(mut packed: u32, mut mask: u32, slot: u32, n: u32) -> u32 {
    for i in slot..slot + n {
        if mask == 0 {
            break;
        }
        let b = top(mask);
        packed |= u32::from(b + 2) << (16 - 4 * i);
        mask &= !bit(b);
    }
    packed
}

#[inline]
fn head(category: Category, ranks: &[u8]) -> u32 {
    let mut packed = (category as u32) << 20;
    for (i, &b) in ranks.iter().enumerate() {
        packed |= u32::from(b + 2) << (16 - 4 * i);
    }
    packed
}

/// Evaluates the best five-card hand among the 5 to 7 distinct cards encoded in `key`.
#[inline]
pub fn evaluate_lanes(key: u64) -> HandValue {
    let s0 = (key & LANE) as u32;
    let s1 = ((key >> 16) & LANE) as u32;
    let s2 = ((key >> 32) & LANE) as u32;
    let s3 = ((key >> 48) & LANE) as u32;

    let mut flush = 0u32;
    for s in [s0, s1, s2, s3] {
        if s.count_ones() >= 5 {
            if let Some(h) = straight_high(s) {
                return HandValue(((Category::StraightFlush as u32) << 20) | (u32::from(h) << 16));
            }
            flush = s;
        }
    }

    let any = s0 | s1 | s2 | s3;
    let ge2 = (s0 & s1) | (s0 & s2) | (s0 & s3) | (s1 & s2) | (s1 & s3) | (s2 & s3);
    let ge3 = (s0 & s1 & s2) | (s0 & s1 & s3) | (s0 & s2 & s3) | (s1 & s2 & s3);
    let quads = s0 & s1 & s2 & s3;

    if quads != 0 {
        let q = top(quads);
        let p = head(Category::Quads, &[q]);
        return HandValue(pack_top(p, any & !bit(q), 1, 1));
    }
    if ge3 != 0 {
        let t = top(ge3);
        let rest = ge2 & !bit(t);
        if rest != 0 {
            return HandValue(head(Category::FullHouse, &[t, top(rest)]));
        }
    }
    if flush != 0 {
        return HandValue(pack_top(head(Category::Flush, &[]), flush, 0, 5));
    }
    if let Some(h) = straight_high(any) {
        return HandValue(((Category::Straight as u32) << 20) | (u32::from(h) << 16));
    }
    if ge3 != 0 {
        let t = top(ge3);
        return HandValue(pack_top(head(Category::Trips, &[t]), any & !bit(t), 1, 2));
    }
    if ge2 != 0 {
        let hi = top(ge2);
        let rest = ge2 & !bit(hi);
        if rest != 0 {
            let lo = top(rest);
            let p = head(Category::TwoPair, &[hi, lo]);
            return HandValue(pack_top(p, any & !bit(hi) & !bit(lo), 2, 1));
        }
        return HandValue(pack_top(head(Category::Pair, &[hi]), any & !bit(hi), 1, 3));
    }
    HandValue(pack_top(head(Category::HighCard, &[]), any, 0, 5))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cards<const N: usize>(s: &str) -> [Card; N] {
        let v: Vec<Card> = s.split_whitespace().map(|t| t.parse().unwrap()).collect();
        v.try_into().unwrap()
    }

    #[test]
    fn royal_flush_is_maximum() {
        let royal = rank5(&cards("As Ks Qs Js Ts")).unwrap();
        assert_eq!(royal.category(), Category::StraightFlush);
        assert_eq!(royal.tiebreak(), vec![14]);
        assert_eq!(royal, HandValue::from_parts(Category::StraightFlush, &[14]));
    }

    #[test]
    fn wheel() {
        let v = rank5(&cards("Ac 2d 3h 4s 5c")).unwrap();
        assert_eq!(v.category(), Category::Straight);
        assert_eq!(v.tiebreak(), vec![5]);
        let six_high = rank5(&cards("2d 3h 4s 5c 6c")).unwrap();
        assert!(six_high > v);
        let steel = rank5(&cards("Ac 2c 3c 4c 5c")).unwrap();
        assert_eq!(steel, HandValue::from_parts(Category::StraightFlush, &[5]));
    }

    #[test]
    fn quads_with_king_kicker() {
        let v = rank7(&cards("As Ah Ad Ac Ks Kh 2c")).unwrap();
        assert_eq!(v, HandValue::from_parts(Category::Quads, &[14, 13]));
    }

    #[test]
    fn counterfeited_two_pair() {
        // Three pairs: the lowest pair is dropped and the kicker is the best of the rest.
        let v = rank7(&cards("9s 9h 5c 5d 4s 4h Kc")).unwrap();
        assert_eq!(v, HandValue::from_parts(Category::TwoPair, &[9, 5, 13]));
        let v = rank7(&cards("9s 9h 5c 5d 4s 4h 2c")).unwrap();
        assert_eq!(v, HandValue::from_parts(Category::TwoPair, &[9, 5, 4]));
    }

    #[test]
    fn two_trips_make_a_full_house() {
        let v = rank7(&cards("9s 9h 9c 5d 5s 5h 2c")).unwrap();
        assert_eq!(v, HandValue::from_parts(Category::FullHouse, &[9, 5]));
    }

    #[test]
    fn flush_beats_straight_on_board() {
        let v = rank7(&cards("2h 7h 5h 6c 8h 9h 4d")).unwrap();
        assert_eq!(v, HandValue::from_parts(Category::Flush, &[9, 8, 7, 5, 2]));
        let v = rank7(&cards("2h 7h 5h 6h 8h 9h 4d")).unwrap();
        assert_eq!(v, HandValue::from_parts(Category::StraightFlush, &[9]));
        let v = rank7(&cards("2h Kh 5c 6h 7h 8d 9h")).unwrap();
        assert_eq!(v, HandValue::from_parts(Category::Flush, &[13, 9, 7, 6, 2]));
    }

    #[test]
    fn duplicates_rejected() {
        assert!(rank5(&cards("As As Qs Js Ts")).is_err());
        assert!(rank7(&cards("As Ks Qs Js Ts 2c 2c")).is_err());
    }

    #[test]
    fn display() {
        let v = rank5(&cards("Ac Ad Kh Ks 5c")).unwrap();
        assert_eq!(v.to_string(), "two pair [A K 5]");
    }
}
