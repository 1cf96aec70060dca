//! Reference evaluator: sort, group, classify, and take the maximum over all
//! 21 five-card subsets. Slow on purpose and shares nothing with the lane
//! evaluator beyond the `HandValue` type.

use crate::cards::Card;
use crate::error::EvalError;

use super::{Category, HandValue};

fn check_distinct(cards: &[Card]) -> Result<(), EvalError> {
    for (i, a) in cards.iter().enumerate() {
        if cards[i + 1..].contains(a) {
            return Err(EvalError::DuplicateCard(*a));
        }
    }
    Ok(())
}

fn classify(cards: &[Card; 5]) -> HandValue {
    let mut ranks: Vec<u8> = cards.iter().map(|c| c.rank()).collect();
    ranks.sort_unstable_by(|a, b| b.cmp(a));

    let suit = cards[0].suit();
    let is_flush = cards.iter().all(|c| c.suit() == suit);

    let mut distinct = ranks.clone();
    distinct.dedup();
    let straight_high = if distinct.len() == 5 {
        if ranks[0] - ranks[4] == 4 {
            Some(ranks[0])
        } else if ranks == [14, 5, 4, 3, 2] {
            Some(5)
        } else {
            None
        }
    } else {
        None
    };

    // (count, rank) groups, biggest group first, then higher rank.
    let mut groups: Vec<(usize, u8)> = distinct
        .iter()
        .map(|&r| (ranks.iter().filter(|&&x| x == r).count(), r))
        .collect();
    groups.sort_unstable_by(|a, b| b.cmp(a));
    let group_ranks: Vec<u8> = groups.iter().map(|g| g.1).collect();
    let shape: Vec<usize> = groups.iter().map(|g| g.0).collect();

    if let (Some(h), true) = (straight_high, is_flush) { return HandValue::from_parts(Category::StraightFlush, &[h]) }
    let category = match shape.as_slice() {
        [4, 1] => Category::Quads,
        [3, 2] => Category::FullHouse,
        _ if is_flush => Category::Flush,
        _ if straight_high.is_some() => Category::Straight,
        [3, 1, 1] => Category::Trips,
        [2, 2, 1] => Category::TwoPair,
        [2, 1, 1, 1] => Category::Pair,
        _ => Category::HighCard,
    };
    match category {
        Category::Straight => HandValue::from_parts(category, &[straight_high.unwrap_or(0)]),
        Category::Flush | Category::HighCard => HandValue::from_parts(category, &ranks),
        _ => HandValue::from_parts(category, &group_ranks),
    }
}

pub fn rank5_oracle(cards: &[Card; 5]) -> Result<HandValue, EvalError> {
    check_distinct(cards)?;
    Ok(classify(cards))
}

/// Best of the 21 five-card subsets, each classified by [`rank5_oracle`].
pub fn rank7_oracle(cards: &[Card; 7]) -> Result<HandValue, EvalError> {
    check_distinct(cards)?;
    let mut best = None;
    for skip_a in 0..7 {
        for skip_b in skip_a + 1..7 {
            let five: Vec<Card> = (0..7)
                .filter(|&i| i != skip_a && i != skip_b)
                .map(|i| cards[i])
                .collect();
            let five: [Card; 5] = five.try_into().expect("five cards");
            let v = classify(&five);
            if best.is_none_or(|b| v > b) {
                best = Some(v);
            }
        }
    }
    Ok(best.expect("21 subsets"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cards<const N: usize>(s: &str) -> [Card; N] {
        let v: Vec<Card> = s.split_whitespace().map(|t| t.parse().unwrap()).collect();
        v.try_into().unwrap()
    }

    #[test]
    fn reference_examples() {
        let royal = rank5_oracle(&cards("As Ks Qs Js Ts")).unwrap();
        assert_eq!(royal, HandValue::from_parts(Category::StraightFlush, &[14]));
        let wheel = rank5_oracle(&cards("Ac 2d 3h 4s 5c")).unwrap();
        assert_eq!(wheel, HandValue::from_parts(Category::Straight, &[5]));
        let quads = rank7_oracle(&cards("As Ah Ad Ac Ks Kh 2c")).unwrap();
        assert_eq!(quads, HandValue::from_parts(Category::Quads, &[14, 13]));
        assert!(rank7_oracle(&cards("As Ah Ad Ac Ks Kh As")).is_err());
    }
}
