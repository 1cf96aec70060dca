//! Tournaments of Texas hold'em hole pairs and their topology.
//!
//! Exact head-to-head equities between hole pairs define a "beats"
//! relation; totally ordered subsets form a simplicial complex whose
//! integer homology is computed here, together with the same construction
//! for Penney's coin game and a random search for interesting hand sets.

pub mod cards;
pub mod complex;
pub mod equity;
pub mod error;
pub mod evaluator;
pub mod explore;
pub mod homology;
pub mod penney;
pub mod probability;
pub mod reference;
pub mod verify;

pub use cards::{Card, HolePair, SuitPermutation};
pub use complex::{order_complex, SimplicialComplex, Tournament};
pub use equity::{matchup_counts, win_probability, CountsMatrix, LiveMatchups, MatchupCount, MatchupSource, Threshold, TieConvention};
pub use homology::{homology, HomologyReport};
pub use probability::Probability;
