use thiserror::Error;

use crate::cards::{Card, HolePair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CardError {
    #[error("invalid rank character '{0}' (expected one of 23456789TJQKA)")]
    RankChar(char),
    #[error("invalid suit character '{0}' (expected one of cdhs)")]
    SuitChar(char),
    #[error("a card is written as two characters, got {0:?}")]
    Length(String),
    #[error("rank {0} out of range 2..=14")]
    Rank(u8),
    #[error("suit {0} out of range 0..=3")]
    Suit(u8),
    #[error("card index {0} out of range 0..52")]
    Index(usize),
    #[error("pair index {0} out of range 0..1326")]
    PairIndex(usize),
    #[error("cannot parse hole pair from {0:?}")]
    PairText(String),
    #[error("card {0} used twice")]
    DuplicateCard(Card),
    #[error("{0:?} is not a permutation of the four suits")]
    NotAPermutation([u8; 4]),
    #[error("hole pairs {0} and {1} share a card")]
    Overlap(HolePair, HolePair),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("card {0} appears more than once in the hand")]
    DuplicateCard(Card),
    #[error("a hand has 5 to 7 cards, got {0}")]
    CardCount(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquityError {
    #[error("hole pairs {a} and {b} overlap on {cards:?}")]
    Overlap { a: HolePair, b: HolePair, cards: Vec<Card> },
    #[error("matrix has no valid entry for {0} vs {1}")]
    MissingEntry(HolePair, HolePair),
    #[error("threshold {0} outside [1/2, 1]")]
    Threshold(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("bad magic bytes {0:?}")]
    Magic([u8; 4]),
    #[error("unsupported format version {0}")]
    Version(u16),
    #[error("{0}")]
    Malformed(String),
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
}

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("symmetry reduction needs a suit-closed set of pairs; {0} has images outside it")]
    NotSuitClosed(HolePair),
    #[error("no pairs to compute")]
    EmptyUniverse,
    #[error("worker pool: {0}")]
    Pool(String),
}

impl From<std::io::Error> for MatrixError {
    fn from(e: std::io::Error) -> Self {
        MatrixError::Format(FormatError::Io(e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    VertexIndex(usize),
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),
    #[error("self-loop on {0:?}")]
    SelfLoop(String),
    #[error("edge {0:?} -> {1:?} contradicts the existing edge {1:?} -> {0:?}")]
    NotAntisymmetric(String, String),
    #[error("join operands share vertex {0:?}")]
    JoinOverlap(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("filtration thresholds must strictly decrease (stage {0})")]
    ThresholdOrder(usize),
    #[error("filtration stage {stage} is not contained in stage {next}: face {face:?} is missing")]
    NotNested { stage: usize, next: usize, face: Vec<String> },
    #[error("filtration stages must share one vertex set (stage {0})")]
    VertexMismatch(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PenneyError {
    #[error("words have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("both players chose {0}")]
    SameWord(String),
    #[error("invalid binary word {0:?}")]
    Parse(String),
    #[error("word length {0} outside 1..=32")]
    Length(usize),
}
