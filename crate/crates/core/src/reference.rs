//! Named hand sets with known structure, used by tests and `verify-paper`.

use crate::cards::{parse_pair_list, HolePair};

fn pairs(text: &str) -> Vec<HolePair> {
    parse_pair_list(text).expect("reference hands are well formed")
}

/// A♣2♣ beats 3♣5♣ beats 2♦2♥ beats A♣2♣.
pub fn triangle() -> Vec<HolePair> {
    pairs("Ac2c 3c5c 2d2h")
}

/// The two ace pairs, which split nearly every board.
pub fn aces_row() -> Vec<HolePair> {
    pairs("AcAd AhAs")
}

/// 6♦6♠ > Q♦J♠ > J♥T♥ > 6♦6♠.
pub fn middle_row() -> Vec<HolePair> {
    pairs("6d6s QdJs JhTh")
}

/// 2♥2♠ > T♣7♠ > 6♣4♣ > 2♥2♠.
pub fn bottom_row() -> Vec<HolePair> {
    pairs("2h2s Tc7s 6c4c")
}

/// Eight hands whose order complex is a 4-sphere: the join of the three
/// rows, each row beating every hand in the rows below it.
pub fn eight_hand_sphere() -> Vec<HolePair> {
    let mut all = aces_row();
    all.extend(middle_row());
    all.extend(bottom_row());
    all
}

/// Directed edges of the eight-hand relation, as (winner, loser) texts.
pub fn eight_hand_edges() -> Vec<(String, String)> {
    let rows = [aces_row(), middle_row(), bottom_row()];
    let mut edges = Vec::new();
    for (i, upper) in rows.iter().enumerate() {
        for lower in &rows[i + 1..] {
            for a in upper {
                for b in lower {
                    edges.push((a.to_string(), b.to_string()));
                }
            }
        }
    }
    for row in &rows[1..] {
        for k in 0..3 {
            edges.push((row[k].to_string(), row[(k + 1) % 3].to_string()));
        }
    }
    edges.sort();
    edges
}

/// The closest call over all matchups, 3x3y against AxTx.
pub fn closest_matchup() -> (HolePair, HolePair) {
    ("3c3d".parse().expect("valid"), "AcTc".parse().expect("valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sets_are_disjoint() {
        let y = eight_hand_sphere();
        assert_eq!(y.len(), 8);
        for (i, a) in y.iter().enumerate() {
            for b in &y[i + 1..] {
                assert!(!a.overlaps(*b), "{a} {b}");
            }
        }
        assert_eq!(eight_hand_edges().len(), 27);
        assert_eq!(triangle()[1].to_string(), "5c3c");
    }
}
