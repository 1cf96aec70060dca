//! Cards, hole pairs and suit relabelings.
//!
//! A card is stored as its deck index `4 * (rank - 2) + suit`, with ranks
//! `2..=14` (14 is the ace) and suits ordered clubs, diamonds, hearts,
//! spades. Ordering cards by index therefore orders them by rank first and
//! suit second.
//!
//! A hole pair is an unordered pair of distinct cards. The 1326 pairs are
//! numbered in colex order: `(lo, hi)` maps to `hi * (hi - 1) / 2 + lo`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_with::{DeserializeFromStr, SerializeDisplay};

use crate::error::CardError;

pub const DECK_SIZE: usize = 52;
/// `C(52, 2)`.
pub const NUM_PAIRS: usize = 1326;

const RANK_CHARS: &[u8; 13] = b"23456789TJQKA";
const SUIT_CHARS: &[u8; 4] = b"cdhs";

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, SerializeDisplay, DeserializeFromStr)]
pub struct Card(u8);

impl Card {
    pub fn new(rank: u8, suit: u8) -> Result<Self, CardError> {
        if !(2..=14).contains(&rank) {
            return Err(CardError::Rank(rank));
        }
        if suit > 3 {
            return Err(CardError::Suit(suit));
        }
        Ok(Card(4 * (rank - 2) + suit))
    }

    pub fn from_index(index: u8) -> Result<Self, CardError> {
        if usize::from(index) >= DECK_SIZE {
            return Err(CardError::Index(usize::from(index)));
        }
        Ok(Card(index))
    }

    #[inline]
    pub const fn index(self) -> u8 {
        self.0
    }

    /// 2..=14, ace high.
    #[inline]
    pub const fn rank(self) -> u8 {
        self.0 / 4 + 2
    }

    /// 0 = clubs, 1 = diamonds, 2 = hearts, 3 = spades.
    #[inline]
    pub const fn suit(self) -> u8 {
        self.0 % 4
    }

    /// All 52 cards in index order.
    pub fn deck() -> impl Iterator<Item = Card> {
        (0..DECK_SIZE as u8).map(Card)
    }

    pub fn with_suit(self, suit: u8) -> Card {
        debug_assert!(suit < 4);
        Card(self.0 - self.suit() + suit)
    }
}

impl FromStr for Card {
    type Err = CardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let (Some(r), Some(su), None) = (chars.next(), chars.next(), chars.next()) else {
            return Err(CardError::Length(s.to_string()));
        };
        let rank = RANK_CHARS
            .iter()
            .position(|&c| char::from(c) == r.to_ascii_uppercase())
            .ok_or(CardError::RankChar(r))?;
        let suit = SUIT_CHARS
            .iter()
            .position(|&c| char::from(c) == su)
            .ok_or(CardError::SuitChar(su))?;
        Ok(Card(4 * rank as u8 + suit as u8))
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = RANK_CHARS[usize::from(self.0 / 4)];
        let s = SUIT_CHARS[usize::from(self.0 % 4)];
        write!(f, "{}{}", char::from(r), char::from(s))
    }
}

impl fmt::Debug for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a card given as text ("As") and reports the offending character on failure.
pub fn card_from_text(s: &str) -> Result<Card, CardError> {
    s.parse()
}

/// Two distinct cards with `lo < hi` by index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, SerializeDisplay, DeserializeFromStr)]
pub struct HolePair {
    lo: Card,
    hi: Card,
}

impl HolePair {
    pub fn new(a: Card, b: Card) -> Result<Self, CardError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(HolePair { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Ok(HolePair { lo: b, hi: a }),
            std::cmp::Ordering::Equal => Err(CardError::DuplicateCard(a)),
        }
    }

    pub fn from_index(index: usize) -> Result<Self, CardError> {
        if index >= NUM_PAIRS {
            return Err(CardError::PairIndex(index));
        }
        // Largest hi with hi * (hi - 1) / 2 <= index.
        let mut hi = ((1.0 + (1.0 + 8.0 * index as f64).sqrt()) / 2.0) as usize;
        while hi * (hi - 1) / 2 > index {
            hi -= 1;
        }
        while (hi + 1) * hi / 2 <= index {
            hi += 1;
        }
        let lo = index - hi * (hi - 1) / 2;
        Ok(HolePair {
            lo: Card(lo as u8),
            hi: Card(hi as u8),
        })
    }

    #[inline]
    pub const fn lo(self) -> Card {
        self.lo
    }

    #[inline]
    pub const fn hi(self) -> Card {
        self.hi
    }

    #[inline]
    pub fn index(self) -> usize {
        pair_index(self)
    }

    pub fn cards(self) -> [Card; 2] {
        [self.lo, self.hi]
    }

    /// Bit `i` set for card index `i`.
    #[inline]
    pub fn mask(self) -> u64 {
        (1u64 << self.lo.0) | (1u64 << self.hi.0)
    }

    pub fn overlaps(self, other: HolePair) -> bool {
        self.mask() & other.mask() != 0
    }

    /// All 1326 pairs in `pair_index` order.
    pub fn all() -> impl Iterator<Item = HolePair> {
        (1..DECK_SIZE as u8).flat_map(|hi| (0..hi).map(move |lo| HolePair { lo: Card(lo), hi: Card(hi) }))
    }

    pub fn permute_suits(self, perm: &SuitPermutation) -> HolePair {
        apply_suit_permutation(self, perm)
    }
}

impl FromStr for HolePair {
    type Err = CardError;

    /// Accepts "AsKh", "As Kh", or a decimal pair index.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit()) {
            let idx: usize = t.parse().map_err(|_| CardError::PairText(s.to_string()))?;
            return HolePair::from_index(idx);
        }
        let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.chars().count() != 4 {
            return Err(CardError::PairText(s.to_string()));
        }
        let (a, b) = compact.split_at(2);
        HolePair::new(a.parse()?, b.parse()?)
    }
}

/// Renders the higher rank first and, for pocket pairs, the lower suit
/// first: "AcKd", "2d2h", "Ac2c".
impl fmt::Display for HolePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo.rank() == self.hi.rank() {
            write!(f, "{}{}", self.lo, self.hi)
        } else {
            write!(f, "{}{}", self.hi, self.lo)
        }
    }
}

impl fmt::Debug for HolePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Colex position of the pair among all 2-subsets of the deck.
#[inline]
pub fn pair_index(p: HolePair) -> usize {
    let hi = usize::from(p.hi.0);
    hi * (hi - 1) / 2 + usize::from(p.lo.0)
}

/// A bijection on the four suits; `perm[s]` is the image of suit `s`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SuitPermutation([u8; 4]);

impl SuitPermutation {
    pub const IDENTITY: SuitPermutation = SuitPermutation([0, 1, 2, 3]);

    pub fn new(perm: [u8; 4]) -> Result<Self, CardError> {
        let mut seen = [false; 4];
        for &s in &perm {
            if s > 3 || seen[usize::from(s)] {
                return Err(CardError::NotAPermutation(perm));
            }
            seen[usize::from(s)] = true;
        }
        Ok(SuitPermutation(perm))
    }

    pub fn transposition(a: u8, b: u8) -> Result<Self, CardError> {
        let mut p = [0, 1, 2, 3];
        if a > 3 || b > 3 {
            return Err(CardError::NotAPermutation([a, b, 0, 0]));
        }
        p.swap(usize::from(a), usize::from(b));
        Ok(SuitPermutation(p))
    }

    /// The 24 permutations in lexicographic order, identity first.
    pub fn all() -> [SuitPermutation; 24] {
        let mut out = [SuitPermutation::IDENTITY; 24];
        let mut k = 0;
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    if a == b || a == c || b == c {
                        continue;
                    }
                    let d = 6 - a - b - c;
                    out[k] = SuitPermutation([a, b, c, d]);
                    k += 1;
                }
            }
        }
        out
    }

    #[inline]
    pub fn image(&self, suit: u8) -> u8 {
        self.0[usize::from(suit)]
    }

    pub fn as_array(&self) -> [u8; 4] {
        self.0
    }

    #[inline]
    pub fn apply(&self, card: Card) -> Card {
        card.with_suit(self.image(card.suit()))
    }

    /// `self.then(other)` applies `self` first, then `other`.
    pub fn then(&self, other: &SuitPermutation) -> SuitPermutation {
        let mut p = [0; 4];
        for (s, slot) in p.iter_mut().enumerate() {
            *slot = other.image(self.image(s as u8));
        }
        SuitPermutation(p)
    }

    pub fn inverse(&self) -> SuitPermutation {
        let mut p = [0; 4];
        for s in 0..4u8 {
            p[usize::from(self.image(s))] = s;
        }
        SuitPermutation(p)
    }
}

impl Default for SuitPermutation {
    fn default() -> Self {
        Self::IDENTITY
    }
}

pub fn apply_suit_permutation(p: HolePair, perm: &SuitPermutation) -> HolePair {
    let a = perm.apply(p.lo);
    let b = perm.apply(p.hi);
    if a < b {
        HolePair { lo: a, hi: b }
    } else {
        HolePair { lo: b, hi: a }
    }
}

#[inline]
fn matchup_key(a: HolePair, b: HolePair) -> [u8; 4] {
    [a.lo.0, a.hi.0, b.lo.0, b.hi.0]
}

/// Least image of the ordered matchup `(a, b)` under the 24 simultaneous suit
/// relabelings, compared by `(a.lo, a.hi, b.lo, b.hi)`, with a permutation
/// mapping the input onto it.
pub fn canonical_matchup(
    a: HolePair,
    b: HolePair,
) -> Result<(HolePair, HolePair, SuitPermutation), CardError> {
    if a.overlaps(b) {
        return Err(CardError::Overlap(a, b));
    }
    let mut best = (a, b, SuitPermutation::IDENTITY);
    let mut best_key = matchup_key(a, b);
    for perm in SuitPermutation::all().iter().skip(1) {
        let pa = apply_suit_permutation(a, perm);
        let pb = apply_suit_permutation(b, perm);
        let key = matchup_key(pa, pb);
        if key < best_key {
            best_key = key;
            best = (pa, pb, *perm);
        }
    }
    Ok(best)
}

/// Parses a comma- or whitespace-separated list of hole pairs ("Ac2c,3c5c 2d2h").
pub fn parse_pair_list(s: &str) -> Result<Vec<HolePair>, CardError> {
    let tokens: Vec<&str> = s
        .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        // "As Kh" arrives as two 2-character tokens.
        if tokens[i].len() == 2 && !tokens[i].bytes().all(|b| b.is_ascii_digit()) {
            let Some(next) = tokens.get(i + 1) else {
                return Err(CardError::PairText(tokens[i].to_string()));
            };
            out.push(format!("{}{}", tokens[i], next).parse()?);
            i += 2;
        } else {
            out.push(tokens[i].parse()?);
            i += 1;
        }
    }
    Ok(out)
}
