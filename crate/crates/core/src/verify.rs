//! Checks of the published results, shared by `pktop verify-paper` and the
//! acceptance tests. Each check reports a pass flag and a one-line detail.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::Serialize;

use crate::cards::{canonical_matchup, Card, HolePair, SuitPermutation};
use crate::complex::{join, order_complex};
use crate::equity::{
    closest_call, matchup_counts, relation_at, CountsMatrix, LiveMatchups, MatchupCount, MatchupSource, Threshold,
    TieConvention, TOTAL_BOARDS,
};
use crate::evaluator::{rank5, rank5_oracle, rank7, rank7_oracle, Category};
use crate::homology::field::betti_f2;
use crate::homology::{filtration_from_source, homology, persistence};
use crate::penney::{markov_probability, odds_probability, penney_homology, penney_tournament, BinaryWord};
use crate::probability::{to_f64, Probability};
use crate::reference;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} [{:>2}] {}: {}", self.id, self.name, self.detail)
    }
}

fn check(id: u32, name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        id,
        name,
        passed,
        detail: detail.into(),
    }
}

/// Exact counts frozen from the first verified enumeration.
pub const TRIANGLE_COUNTS: [(&str, &str, MatchupCount); 3] = [
    ("Ac2c", "3c5c", MatchupCount { wins: 1_005_468, ties: 12_168, losses: 694_668 }),
    ("3c5c", "2d2h", MatchupCount { wins: 832_236, ties: 59_972, losses: 820_096 }),
    ("2d2h", "Ac2c", MatchupCount { wins: 1_048_744, ties: 26_994, losses: 636_566 }),
];
pub const CLOSEST_COUNTS: MatchupCount = MatchupCount { wins: 851_290, ties: 9_966, losses: 851_048 };

/// Five-card category counts, high card first.
pub const FIVE_CARD_CENSUS: [u64; 9] = [1_302_540, 1_098_240, 123_552, 54_912, 10_200, 5_108, 3_744, 624, 40];

/// Reduced Betti numbers of the Penney complexes, degree 0 upwards.
pub const PENNEY_BETTI: [(usize, &[usize]); 4] = [
    (3, &[0, 3, 0]),
    (4, &[0, 0, 1, 2, 0, 0]),
    (5, &[0, 0, 0, 0, 15, 0, 0, 0, 0]),
    (6, &[0, 0, 0, 0, 0, 38, 149, 12, 0, 0, 0, 0, 0]),
];

fn pair(s: &str) -> HolePair {
    s.parse().expect("valid pair text")
}

fn random_cards<const N: usize>(rng: &mut SplitMix64) -> [Card; N] {
    let mut used = 0u64;
    let mut out = [Card::from_index(0).expect("valid"); N];
    let mut k = 0;
    while k < N {
        let i = (rng.next_u64() % 52) as u8;
        if used & (1 << i) == 0 {
            used |= 1 << i;
            out[k] = Card::from_index(i).expect("valid");
            k += 1;
        }
    }
    out
}

/// Random disjoint matchups from a fixed stream.
pub fn random_matchups(seed: u64, count: usize) -> Vec<(HolePair, HolePair)> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let c: [Card; 4] = random_cards(&mut rng);
            (
                HolePair::new(c[0], c[1]).expect("distinct"),
                HolePair::new(c[2], c[3]).expect("distinct"),
            )
        })
        .collect()
}

fn seven_card_edge_cases() -> Vec<[Card; 7]> {
    [
        "As Ks Qs Js Ts 9s 8s",
        "Ac 2d 3h 4s 5c 9d Kh",
        "Ac 2c 3c 4c 5c 6c 7d",
        "9s 9h 5c 5d 4s 4h Kc",
        "9s 9h 9c 5d 5s 5h 2c",
        "2h 7h 5h 6c 8h 9h 4d",
        "Ah Kh Qh Jh 9h Td 2c",
        "As Ah Ad Ac Ks Kh Kd",
        "2c 3d 4h 5s 7c 8d 9h",
        "Tc Jd Qh Ks Ad 2s 3c",
    ]
    .iter()
    .map(|s| {
        let v: Vec<Card> = s.split_whitespace().map(|t| t.parse().expect("valid")).collect();
        v.try_into().expect("seven cards")
    })
    .collect()
}

/// Criterion 1: fast and reference evaluators agree on random draws.
pub fn evaluator_equivalence(draws: usize, seed: u64) -> Check {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut hands = seven_card_edge_cases();
    hands.extend((0..draws).map(|_| random_cards::<7>(&mut rng)));
    let mismatch = hands
        .iter()
        .find(|h| rank7(h).expect("distinct") != rank7_oracle(h).expect("distinct"));
    match mismatch {
        None => check(1, "evaluator oracle equivalence", true, format!("{} hands agree", hands.len())),
        Some(h) => check(1, "evaluator oracle equivalence", false, format!("disagreement on {h:?}")),
    }
}

/// Category counts over all 2,598,960 five-card hands, fast and reference.
pub fn five_card_census() -> ([u64; 9], [u64; 9]) {
    let mut fast = [0u64; 9];
    let mut slow = [0u64; 9];
    let deck: Vec<Card> = Card::deck().collect();
    for a in 0..52 {
        for b in a + 1..52 {
            for c in b + 1..52 {
                for d in c + 1..52 {
                    for e in d + 1..52 {
                        let h = [deck[a], deck[b], deck[c], deck[d], deck[e]];
                        fast[rank5(&h).expect("distinct").category() as usize] += 1;
                        slow[rank5_oracle(&h).expect("distinct").category() as usize] += 1;
                    }
                }
            }
        }
    }
    (fast, slow)
}

/// Criterion 2.
pub fn census_check() -> Check {
    let (fast, slow) = five_card_census();
    let total: u64 = fast.iter().sum();
    let passed = fast == slow && fast == FIVE_CARD_CENSUS && total == 2_598_960;
    let detail = Category::ALL
        .iter()
        .map(|c| format!("{}={}", c.name(), fast[*c as usize]))
        .collect::<Vec<_>>()
        .join(", ");
    check(2, "five-card census", passed, detail)
}

/// Criterion 3.
pub fn matchup_totals(count: usize, seed: u64) -> Check {
    let bad: Vec<_> = random_matchups(seed, count)
        .into_iter()
        .filter(|&(a, b)| matchup_counts(a, b).expect("disjoint").total() != u64::from(TOTAL_BOARDS))
        .collect();
    check(
        3,
        "matchup totals",
        bad.is_empty(),
        format!("{count} random matchups, {} with w+t+l != {TOTAL_BOARDS}", bad.len()),
    )
}

fn within(p: &Probability, target: f64, tol: f64) -> bool {
    (to_f64(p) - target).abs() <= tol
}

/// Criterion 4: published triangle probabilities and the 3-cycle.
pub fn triangle_check(source: &dyn MatchupSource) -> Check {
    let published: [&[f64]; 3] = [&[0.591, 0.594], &[0.504], &[0.620]];
    let mut fits = Vec::new();
    let mut golden = true;
    let mut details = Vec::new();
    for tc in [TieConvention::StrictWin, TieConvention::SplitTie] {
        let mut all = true;
        for ((a, b, _), targets) in TRIANGLE_COUNTS.iter().zip(published) {
            let c = source.counts(pair(a), pair(b)).expect("disjoint");
            let p = crate::equity::win_probability(&c, tc);
            all &= targets.iter().any(|&t| within(&p, t, 0.0015));
        }
        if all {
            fits.push(tc);
        }
    }
    for (a, b, expect) in TRIANGLE_COUNTS {
        let c = source.counts(pair(a), pair(b)).expect("disjoint");
        golden &= c == expect;
        let p = crate::equity::win_probability(&c, TieConvention::SplitTie);
        details.push(format!("{a}>{b} {:.6}", to_f64(&p)));
    }
    let cycle = fits.iter().all(|&tc| {
        let t = relation_at(source, &reference::triangle(), tc, Threshold::half()).expect("disjoint");
        t.edge_count() == 3 && t.beats(0, 1) && t.beats(1, 2) && t.beats(2, 0)
    });
    let names: Vec<&str> = fits.iter().map(|tc| tc.name()).collect();
    check(
        4,
        "three-hand cycle",
        !fits.is_empty() && cycle && golden,
        format!("{}; matching convention(s): {}", details.join(", "), names.join(" ")),
    )
}

/// Criterion 5.
pub fn closest_matchup_check(source: &dyn MatchupSource) -> Check {
    let (a, b) = reference::closest_matchup();
    let c = source.counts(a, b).expect("disjoint");
    let p = crate::equity::win_probability(&c, TieConvention::SplitTie);
    let strict = crate::equity::win_probability(&c, TieConvention::StrictWin);
    check(
        5,
        "closest call",
        within(&p, 0.50007, 0.00002) && c == CLOSEST_COUNTS,
        format!("{a} vs {b}: {c}, split-tie {:.6}, strict-win {:.6}", to_f64(&p), to_f64(&strict)),
    )
}

/// Criterion 6: the eight-hand relation, its homology, and the join.
pub fn sphere_check(source: &dyn MatchupSource, tc: TieConvention) -> Check {
    let y = reference::eight_hand_sphere();
    let t = relation_at(source, &y, tc, Threshold::half()).expect("disjoint");
    let edges: Vec<(String, String)> = {
        let mut e: Vec<_> = t
            .edges()
            .into_iter()
            .map(|(u, v, _)| (t.label(u).to_string(), t.label(v).to_string()))
            .collect();
        e.sort();
        e
    };
    let digraph = edges == reference::eight_hand_edges();
    let k = order_complex(&t);
    let h = homology(&k, true);
    let sphere = h.betti_numbers() == [0, 0, 0, 0, 1] && !h.has_torsion();
    let row = |hands: Vec<HolePair>| order_complex(&relation_at(source, &hands, tc, Threshold::half()).expect("disjoint"));
    let joined = join(
        &join(&row(reference::aces_row()), &row(reference::middle_row())).expect("distinct labels"),
        &row(reference::bottom_row()),
    )
    .expect("distinct labels");
    let is_join = joined.same_faces(&k);
    check(
        6,
        "eight-hand 4-sphere",
        digraph && sphere && is_join,
        format!(
            "digraph {} ({} edges), reduced homology {:?}, join {}",
            if digraph { "matches" } else { "differs" },
            edges.len(),
            h.betti_numbers(),
            if is_join { "matches" } else { "differs" }
        ),
    )
}

/// Criterion 7.
pub fn penney_three_check() -> Check {
    let t = penney_tournament(3).expect("valid length");
    let cycle = ["011", "110", "100", "001", "011"]
        .windows(2)
        .all(|w| t.beats(t.vertex(w[0]).expect("word"), t.vertex(w[1]).expect("word")));
    let h = penney_homology(3).expect("valid length");
    let ok = cycle && h.betti_numbers() == PENNEY_BETTI[0].1 && !h.has_torsion();
    check(7, "Penney n=3", ok, format!("cycle {cycle}, reduced homology {:?}", h.betti_numbers()))
}

/// Criterion 8 for one word length.
pub fn penney_homology_check(n: usize) -> Check {
    let expect = PENNEY_BETTI.iter().find(|(m, _)| *m == n).map(|(_, b)| *b);
    let h = penney_homology(n).expect("valid length");
    let ok = expect.is_some_and(|e| h.betti_numbers() == e) && !h.has_torsion();
    check(8, "Penney homology", ok, format!("n={n}: reduced homology {:?}, torsion {}", h.betti_numbers(), h.has_torsion()))
}

/// Criterion 9: correlation odds equal the Markov-chain solution.
pub fn penney_odds_check(random_pairs: usize, seed: u64) -> Check {
    let big = |p: Probability| BigRational::new(BigInt::from(*p.numer()), BigInt::from(*p.denom()));
    let mut pairs = Vec::new();
    for n in [3, 4] {
        let words = BinaryWord::all(n).expect("valid length");
        for a in &words {
            for b in &words {
                if a != b {
                    pairs.push((*a, *b));
                }
            }
        }
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    for n in [5usize, 6] {
        let mut k = 0;
        while k < random_pairs {
            let a = BinaryWord::new(rng.next_u64() as u32, n).expect("valid length");
            let b = BinaryWord::new(rng.next_u64() as u32, n).expect("valid length");
            if a != b {
                pairs.push((a, b));
                k += 1;
            }
        }
    }
    let bad = pairs
        .iter()
        .find(|(a, b)| big(odds_probability(a, b).expect("distinct")) != markov_probability(a, b).expect("distinct"));
    check(
        9,
        "Penney odds equivalence",
        bad.is_none(),
        match bad {
            None => format!("{} pairs agree exactly", pairs.len()),
            Some((a, b)) => format!("{a} vs {b} disagree"),
        },
    )
}

/// Criterion 10: persistence of the eight-hand filtration.
pub fn persistence_check(source: &dyn MatchupSource, tc: TieConvention) -> Check {
    let y = reference::eight_hand_sphere();
    let f = filtration_from_source(source, &y, tc).expect("disjoint");
    let dgm = persistence(&f);
    let mut consistent = true;
    for (p, k) in f.stages() {
        for (d, &b) in betti_f2(k).iter().enumerate() {
            consistent &= dgm.alive_count(d, p) == b;
        }
    }
    let t = relation_at(source, &y, tc, Threshold::half()).expect("disjoint");
    let weakest = t.edges().into_iter().filter_map(|e| e.2).min().expect("edges");
    let h4: Vec<_> = dgm.in_dimension(4).collect();
    let born = h4.len() == 1 && h4[0].birth == weakest && h4[0].death.is_none();
    check(
        10,
        "persistence of the 4-sphere",
        consistent && born,
        format!(
            "{} stages, alive counts {}, H4 born at {} (weakest edge {})",
            f.stages().len(),
            if consistent { "match" } else { "differ" },
            h4.first().map_or("-".to_string(), |p| format!("{:.6}", to_f64(&p.birth))),
            format!("{:.6}", to_f64(&weakest)),
        ),
    )
}

/// Criterion 11: properties of a complete matrix.
pub fn full_matrix_check(m: &CountsMatrix, tc: TieConvention, spot_checks: usize, seed: u64) -> Check {
    let complete = m.complete_entries();
    let expected = 1326 * 1225;
    let antisym = m.antisymmetry_violation();
    let mut rng = SplitMix64::seed_from_u64(seed);
    let perms = SuitPermutation::all();
    let mut invariant = true;
    let mut matches_enumeration = true;
    for (i, (a, b)) in random_matchups(seed, spot_checks).into_iter().enumerate() {
        let s = perms[(rng.next_u64() % 24) as usize];
        invariant &= m.get(a, b) == m.get(a.permute_suits(&s), b.permute_suits(&s));
        if i < 20 {
            matches_enumeration &= m.get(a, b) == matchup_counts(a, b).expect("disjoint");
        }
    }
    let sweeps = m.sweeps();
    let target = canonical_matchup(pair("3c3d"), pair("AcTc")).expect("disjoint");
    let closest = closest_call(m, tc);
    let (closest_ok, closest_detail) = match &closest {
        Some(c) => {
            let classes: BTreeSet<_> = c
                .matchups
                .iter()
                .map(|&(a, b)| canonical_matchup(a, b).expect("disjoint"))
                .map(|(a, b, _)| (a, b))
                .collect();
            let ok = classes.len() == 1 && classes.contains(&(target.0, target.1));
            (ok, format!("min {:.6} over {} matchups in {} class(es)", to_f64(&c.probability), c.matchups.len(), classes.len()))
        }
        None => (false, "no probability above 1/2".to_string()),
    };
    check(
        11,
        "full matrix",
        complete == expected && antisym.is_none() && invariant && matches_enumeration && sweeps.is_empty() && closest_ok,
        format!(
            "{complete}/{expected} entries, antisymmetry {}, suit invariance {}, spot enumeration {}, {} sure wins, {closest_detail}",
            if antisym.is_none() { "ok" } else { "violated" },
            if invariant { "ok" } else { "violated" },
            if matches_enumeration { "ok" } else { "differs" },
            sweeps.len()
        ),
    )
}

/// Everything that does not need the full matrix, in criterion order.
pub fn fast_checks(source: &dyn MatchupSource, tc: TieConvention, mut report: impl FnMut(&Check)) -> Vec<Check> {
    let mut out = Vec::new();
    let mut push = |c: Check| {
        report(&c);
        out.push(c);
    };
    push(evaluator_equivalence(100_000, 1));
    push(census_check());
    push(matchup_totals(100, 3));
    push(triangle_check(source));
    push(closest_matchup_check(source));
    push(sphere_check(source, tc));
    push(penney_three_check());
    for n in [4, 5, 6] {
        push(penney_homology_check(n));
    }
    push(penney_odds_check(500, 9));
    push(persistence_check(source, tc));
    out
}

/// A ready-made source for the fast checks.
pub fn live_source() -> LiveMatchups {
    LiveMatchups::new()
}
