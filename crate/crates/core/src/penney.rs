//! Penney's coin game: two players each pick a binary word of length `n`
//! and a fair coin is flipped until one of the words shows up.
//!
//! Winning probabilities come from Conway's correlation numbers (fast) and
//! from an exact solve of the Markov chain on matched prefixes (reference).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{order_complex, SimplicialComplex, Tournament};
use crate::error::PenneyError;
use crate::homology::{homology, HomologyReport};
use crate::probability::{half, Probability};

pub const MAX_LEN: usize = 32;

/// A word of `len` bits; the first flip is the most significant bit.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BinaryWord {
    bits: u32,
    len: u8,
}

impl BinaryWord {
    pub fn new(bits: u32, len: usize) -> Result<Self, PenneyError> {
        if len == 0 || len > MAX_LEN {
            return Err(PenneyError::Length(len));
        }
        let mask = if len == 32 { u32::MAX } else { (1u32 << len) - 1 };
        Ok(BinaryWord {
            bits: bits & mask,
            len: len as u8,
        })
    }

    pub fn len(&self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Bit at position `i`, counting from the first flip.
    pub fn bit(&self, i: usize) -> u8 {
        ((self.bits >> (self.len() - 1 - i)) & 1) as u8
    }

    /// The first `k` flips.
    fn prefix(&self, k: usize) -> u32 {
        self.bits >> (self.len() - k)
    }

    /// The last `k` flips.
    fn suffix(&self, k: usize) -> u32 {
        if k == 32 {
            self.bits
        } else {
            self.bits & ((1u32 << k) - 1)
        }
    }

    pub fn complement(&self) -> BinaryWord {
        BinaryWord::new(!self.bits, self.len()).expect("same length")
    }

    /// All `2^n` words in numeric order.
    pub fn all(n: usize) -> Result<Vec<BinaryWord>, PenneyError> {
        if n == 0 || n > 20 {
            return Err(PenneyError::Length(n));
        }
        (0..1u32 << n).map(|b| BinaryWord::new(b, n)).collect()
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BinaryWord {
    type Err = PenneyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(PenneyError::Parse(s.to_string()));
        }
        if s.len() > MAX_LEN {
            return Err(PenneyError::Length(s.len()));
        }
        let bits = s.bytes().fold(0u32, |acc, b| (acc << 1) | u32::from(b - b'0'));
        BinaryWord::new(bits, s.len())
    }
}

fn check_pair(a: &BinaryWord, b: &BinaryWord) -> Result<(), PenneyError> {
    if a.len() != b.len() {
        return Err(PenneyError::LengthMismatch(a.len(), b.len()));
    }
    if a == b {
        return Err(PenneyError::SameWord(a.to_string()));
    }
    Ok(())
}

/// Conway's correlation: the sum of `2^(k-1)` over every `k` for which the
/// last `k` bits of `a` equal the first `k` bits of `b`.
pub fn correlation(a: &BinaryWord, b: &BinaryWord) -> Result<u64, PenneyError> {
    if a.len() != b.len() {
        return Err(PenneyError::LengthMismatch(a.len(), b.len()));
    }
    Ok((1..=a.len())
        .filter(|&k| a.suffix(k) == b.prefix(k))
        .map(|k| 1u64 << (k - 1))
        .sum())
}

/// Probability that `a` appears before `b`, from the correlation odds
/// `(bb - ba) : (aa - ab)`.
pub fn odds_probability(a: &BinaryWord, b: &BinaryWord) -> Result<Probability, PenneyError> {
    check_pair(a, b)?;
    let aa = correlation(a, a)?;
    let ab = correlation(a, b)?;
    let ba = correlation(b, a)?;
    let bb = correlation(b, b)?;
    // Distinct words of equal length never overlap fully, so aa > ab and bb > ba.
    let for_a = bb - ba;
    let for_b = aa - ab;
    Ok(Probability::new(for_a, for_a + for_b))
}

/// The same probability by solving the absorbing Markov chain whose states
/// are the longest suffixes of the flips so far that are prefixes of `a`
/// or `b`.
pub fn markov_probability(a: &BinaryWord, b: &BinaryWord) -> Result<BigRational, PenneyError> {
    check_pair(a, b)?;
    let n = a.len();
    // A state is a (length, bits) prefix of a or b, shorter than n.
    let mut states: Vec<(usize, u32)> = Vec::new();
    for k in 0..n {
        for w in [a, b] {
            let s = (k, if k == 0 { 0 } else { w.prefix(k) });
            if !states.contains(&s) {
                states.push(s);
            }
        }
    }
    let index_of = |s: (usize, u32)| states.iter().position(|&t| t == s);

    enum Next {
        WinA,
        WinB,
        State(usize),
    }
    let step = |(k, bits): (usize, u32), x: u32| -> Next {
        let (k, bits) = (k + 1, (bits << 1) | x);
        if k == n && bits == a.bits {
            return Next::WinA;
        }
        if k == n && bits == b.bits {
            return Next::WinB;
        }
        for j in (0..=k.min(n - 1)).rev() {
            let tail = if j == 0 { 0 } else { bits & ((1u32 << j) - 1) };
            if let Some(i) = index_of((j, tail)) {
                return Next::State(i);
            }
        }
        unreachable!("the empty prefix is always a state")
    };

    // Row i: p_i - sum_x p_next / 2 = (wins for a) / 2.
    let m = states.len();
    let h = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut rows: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); m + 1]; m];
    for (i, &s) in states.iter().enumerate() {
        rows[i][i] += BigRational::one();
        for x in 0..2 {
            match step(s, x) {
                Next::WinA => rows[i][m] += &h,
                Next::WinB => {}
                Next::State(j) => rows[i][j] -= &h,
            }
        }
    }
    let solution = solve(rows);
    let start = index_of((0, 0)).expect("empty prefix");
    Ok(solution[start].clone())
}

/// Gauss-Jordan elimination on an augmented, nonsingular system.
fn solve(mut rows: Vec<Vec<BigRational>>) -> Vec<BigRational> {
    let m = rows.len();
    for col in 0..m {
        let p = (col..m).find(|&r| !rows[r][col].is_zero()).expect("nonsingular system");
        rows.swap(col, p);
        let pivot = rows[col][col].clone();
        for v in rows[col].iter_mut() {
            *v /= &pivot;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
    }
    rows.into_iter().map(|mut r| r.pop().expect("augmented")).collect()
}

/// Probability that `a` shows up strictly before `b`.
pub fn first_occurrence_probability(a: &BinaryWord, b: &BinaryWord) -> Result<Probability, PenneyError> {
    odds_probability(a, b)
}

/// All words of length `n`, with `a -> b` whenever `a` shows up first with
/// probability above 1/2.
pub fn penney_tournament(n: usize) -> Result<Tournament, PenneyError> {
    let words = BinaryWord::all(n)?;
    let mut t = Tournament::new(words.iter().map(|w| w.to_string())).expect("distinct labels");
    for (i, a) in words.iter().enumerate() {
        for (j, b) in words.iter().enumerate().skip(i + 1) {
            let p = odds_probability(a, b)?;
            if p > half() {
                t.add_edge(i, j, Some(p)).expect("fresh edge");
            } else if p < half() {
                t.add_edge(j, i, Some(Probability::from_integer(1) - p)).expect("fresh edge");
            }
        }
    }
    Ok(t)
}

pub fn penney_complex(n: usize) -> Result<SimplicialComplex, PenneyError> {
    Ok(order_complex(&penney_tournament(n)?))
}

/// Reduced integer homology of the order complex of the length-`n` game.
pub fn penney_homology(n: usize) -> Result<HomologyReport, PenneyError> {
    Ok(homology(&penney_complex(n)?, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn big(p: Probability) -> BigRational {
        BigRational::new(BigInt::from(*p.numer()), BigInt::from(*p.denom()))
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("0110").to_string(), "0110");
        assert_eq!(w("0011").bits(), 3);
        assert!("012".parse::<BinaryWord>().is_err());
        assert!("".parse::<BinaryWord>().is_err());
        assert_eq!(w("100").complement(), w("011"));
    }

    #[test]
    fn correlations() {
        assert_eq!(correlation(&w("000"), &w("000")).unwrap(), 7);
        assert_eq!(correlation(&w("011"), &w("110")).unwrap(), 3);
        assert_eq!(correlation(&w("110"), &w("011")).unwrap(), 1);
        assert_eq!(correlation(&w("101"), &w("101")).unwrap(), 5);
        assert!(correlation(&w("01"), &w("011")).is_err());
    }

    #[test]
    fn hundred_before_triple_zero() {
        assert_eq!(first_occurrence_probability(&w("100"), &w("000")).unwrap(), Ratio::new(7, 8));
        assert_eq!(markov_probability(&w("100"), &w("000")).unwrap(), big(Ratio::new(7, 8)));
    }

    #[test]
    fn nontransitive_cycle_of_length_three() {
        let cycle = ["011", "110", "100", "001", "011"];
        for pair in cycle.windows(2) {
            let p = first_occurrence_probability(&w(pair[0]), &w(pair[1])).unwrap();
            assert!(p > half(), "{} vs {}: {p}", pair[0], pair[1]);
        }
        assert_eq!(first_occurrence_probability(&w("011"), &w("110")).unwrap(), Ratio::new(3, 4));
        assert_eq!(first_occurrence_probability(&w("110"), &w("100")).unwrap(), Ratio::new(2, 3));
    }

    #[test]
    fn formula_matches_chain_for_short_words() {
        for n in 1..=4 {
            let words = BinaryWord::all(n).unwrap();
            for a in &words {
                for b in &words {
                    if a == b {
                        assert!(odds_probability(a, b).is_err());
                        continue;
                    }
                    assert_eq!(big(odds_probability(a, b).unwrap()), markov_probability(a, b).unwrap(), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn single_flip_game_has_no_edges() {
        let t = penney_tournament(1).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.edge_count(), 0);
    }

    #[test]
    fn three_flips_give_three_circles() {
        let t = penney_tournament(3).unwrap();
        for pair in ["011", "110", "100", "001", "011"].windows(2) {
            assert!(t.beats(t.vertex(pair[0]).unwrap(), t.vertex(pair[1]).unwrap()));
        }
        let h = penney_homology(3).unwrap();
        assert_eq!(h.betti_numbers(), vec![0, 3, 0]);
        assert!(!h.has_torsion());
        assert_eq!(penney_complex(3).unwrap().f_vector(), vec![8, 18, 8]);
    }
}
