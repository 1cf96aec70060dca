use std::collections::BTreeSet;

use num_rational::Ratio;
use proptest::prelude::*;

use holdem_topology::cards::{apply_suit_permutation, canonical_matchup, HolePair, SuitPermutation};
use holdem_topology::complex::{is_simplex, join, order_complex, sphere_boundary, SimplicialComplex, Tournament};
use holdem_topology::equity::{matchup_counts, CountsMatrix, MatchupCount, Threshold};
use holdem_topology::homology::homology;
use holdem_topology::penney::{first_occurrence_probability, BinaryWord};
use holdem_topology::reference;

fn disjoint_pair() -> impl Strategy<Value = (HolePair, HolePair)> {
    (0usize..1326, 0usize..1326)
        .prop_map(|(i, j)| (HolePair::from_index(i).unwrap(), HolePair::from_index(j).unwrap()))
        .prop_filter("disjoint", |(a, b)| !a.overlaps(*b))
}

fn suit_perm() -> impl Strategy<Value = SuitPermutation> {
    (0usize..24).prop_map(|i| SuitPermutation::all()[i])
}

/// Each pair gets no edge, one direction or the other, with a probability in (1/2, 1].
fn tournament(max_n: usize) -> impl Strategy<Value = Tournament> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec((0u8..3, 1u64..=100), pairs).prop_map(move |choices| {
            let mut t = Tournament::new((0..n).map(|i| format!("v{i}"))).unwrap();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    let (dir, w) = choices[k];
                    k += 1;
                    let p = Ratio::new(100 + w, 200);
                    match dir {
                        1 => t.add_edge(u, v, Some(p)).unwrap(),
                        2 => t.add_edge(v, u, Some(p)).unwrap(),
                        _ => {}
                    }
                }
            }
            t
        })
    })
}

fn alternating_sum(f: &[usize]) -> i64 {
    f.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

fn relabel(k: &SimplicialComplex, prefix: &str) -> SimplicialComplex {
    let text: String = k
        .labelled_maximal_faces()
        .iter()
        .map(|f| f.iter().map(|l| format!("{prefix}{l}")).collect::<Vec<_>>().join(" ") + "\n")
        .collect();
    SimplicialComplex::parse_text(&text).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_is_a_suit_invariant((a, b) in disjoint_pair(), perm in suit_perm()) {
        let (ca, cb, to) = canonical_matchup(a, b).unwrap();
        prop_assert_eq!((apply_suit_permutation(a, &to), apply_suit_permutation(b, &to)), (ca, cb));
        let (pa, pb) = (apply_suit_permutation(a, &perm), apply_suit_permutation(b, &perm));
        let (qa, qb, _) = canonical_matchup(pa, pb).unwrap();
        prop_assert_eq!((qa, qb), (ca, cb));
    }

    #[test]
    fn faces_are_determined_by_triples(t in tournament(7)) {
        let n = t.len();
        for mask in 1u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let by_triples = s.iter().enumerate().all(|(i, &x)| {
                s[i + 1..].iter().enumerate().all(|(j, &y)| {
                    t.comparable(x, y)
                        && s[i + j + 2..].iter().all(|&z| is_simplex(&t, &[x, y, z]).unwrap())
                })
            });
            prop_assert_eq!(is_simplex(&t, &s).unwrap(), by_triples, "{:?}", s);
        }
    }

    #[test]
    fn homology_euler_matches_f_vector(t in tournament(8)) {
        let k = order_complex(&t);
        let h = homology(&k, false);
        prop_assert_eq!(h.euler_characteristic(), alternating_sum(&k.f_vector()));
        let r = homology(&k, true);
        prop_assert_eq!(r.euler_characteristic(), h.euler_characteristic());
    }

    #[test]
    fn thresholds_only_remove_edges(t in tournament(7), lo in 50u64..=100, step in 0u64..=50) {
        let hi = (lo + step).min(100);
        let at = |p: u64| {
            let th = Threshold::new(Ratio::new(p, 100)).unwrap();
            t.filter_edges(|q| th.admits(q))
        };
        let (a, b) = (at(lo), at(hi));
        for (u, v, _) in b.edges() {
            prop_assert!(a.beats(u, v));
        }
        let faces_hi = order_complex(&b).labelled_maximal_faces();
        let k_lo = order_complex(&a);
        for f in faces_hi {
            let idx: Vec<u32> = f.iter().map(|l| k_lo.vertex_index(l).unwrap()).collect();
            prop_assert!(k_lo.contains(&idx));
        }
    }

    #[test]
    fn join_is_commutative_associative_and_shifts_homology(
        a in tournament(4), b in tournament(4), c in tournament(3)
    ) {
        let (ka, kb, kc) = (
            relabel(&order_complex(&a), "a"),
            relabel(&order_complex(&b), "b"),
            relabel(&order_complex(&c), "c"),
        );
        let ab = join(&ka, &kb).unwrap();
        prop_assert!(ab.same_faces(&join(&kb, &ka).unwrap()));
        let left = join(&ab, &kc).unwrap();
        let right = join(&ka, &join(&kb, &kc).unwrap()).unwrap();
        prop_assert!(left.same_faces(&right));

        let (ha, hb, hab) = (homology(&ka, true), homology(&kb, true), homology(&ab, true));
        if !ha.has_torsion() && !hb.has_torsion() {
            let (ba, bb) = (ha.betti_numbers(), hb.betti_numbers());
            for k in 0..hab.groups.len() {
                let expected: usize = (0..ba.len())
                    .flat_map(|i| (0..bb.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| i + j + 1 == k)
                    .map(|(i, j)| ba[i] * bb[j])
                    .sum();
                prop_assert_eq!(hab.betti(k), expected, "degree {}", k);
            }
        }
    }

    #[test]
    fn penney_odds_respect_complement_and_sum_to_one(n in 2usize..=6, x in 0u32..64, y in 0u32..64) {
        let mask = (1u32 << n) - 1;
        let (a, b) = (BinaryWord::new(x & mask, n).unwrap(), BinaryWord::new(y & mask, n).unwrap());
        prop_assume!(a != b);
        let p = first_occurrence_probability(&a, &b).unwrap();
        let q = first_occurrence_probability(&b, &a).unwrap();
        prop_assert_eq!(p + q, Ratio::from_integer(1));
        prop_assert_eq!(first_occurrence_probability(&a.complement(), &b.complement()).unwrap(), p);
    }

    #[test]
    fn matrix_file_round_trips(entries in prop::collection::vec(
        ((0usize..1326, 0usize..1326), (0u32..2_000_000, 0u32..2_000_000, 0u32..2_000_000)), 0..40
    )) {
        let mut m = CountsMatrix::empty();
        for ((i, j), (w, t, l)) in entries {
            let (a, b) = (HolePair::from_index(i).unwrap(), HolePair::from_index(j).unwrap());
            if !a.overlaps(b) {
                m.set(a, b, MatchupCount::new(w, t, l));
            }
        }
        let mut bytes = Vec::new();
        m.write_to(&mut bytes).unwrap();
        prop_assert_eq!(bytes.len(), 10 + 1326 * 1326 * 12);
        prop_assert!(CountsMatrix::read_from(&bytes[..]).unwrap() == m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    // Each case enumerates six matchups, about a third of a second.
    #[test]
    fn counts_are_antisymmetric_and_suit_invariant((a, b) in disjoint_pair(), perm in suit_perm()) {
        let ab = matchup_counts(a, b).unwrap();
        prop_assert!(ab.is_complete());
        prop_assert_eq!(matchup_counts(b, a).unwrap(), ab.reversed());
        let (pa, pb) = (apply_suit_permutation(a, &perm), apply_suit_permutation(b, &perm));
        prop_assert_eq!(matchup_counts(pa, pb).unwrap(), ab);
    }
}

#[test]
fn sphere_relation_is_the_join_of_its_rows() {
    let mut t = Tournament::new(reference::eight_hand_sphere().iter().map(|h| h.to_string())).unwrap();
    for (u, v) in reference::eight_hand_edges() {
        t.add_edge_by_label(&u, &v, None).unwrap();
    }
    let y = order_complex(&t);
    assert_eq!(y.f_vector(), vec![8, 27, 48, 45, 18]);

    let row = |hands: Vec<HolePair>| {
        let labels: Vec<String> = hands.iter().map(|h| h.to_string()).collect();
        order_complex(&t.induced(&labels.iter().map(|l| t.vertex(l).unwrap()).collect::<Vec<_>>()).unwrap())
    };
    let joined = join(
        &join(&row(reference::aces_row()), &row(reference::middle_row())).unwrap(),
        &row(reference::bottom_row()),
    )
    .unwrap();
    assert!(y.same_faces(&joined));
    assert_eq!(homology(&y, true).betti_numbers(), vec![0, 0, 0, 0, 1]);
}

#[test]
fn simplex_boundaries_are_spheres() {
    for n in 2..=6 {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let h = homology(&sphere_boundary(&refs), true);
        let support: BTreeSet<usize> = h.support().into_iter().collect();
        assert_eq!(support, BTreeSet::from([n - 2]));
        assert_eq!(h.betti(n - 2), 1);
    }
}

#[test]
fn matrix_save_and_load_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.pktp");
    let mut m = CountsMatrix::empty();
    let (a, b) = reference::closest_matchup();
    m.set(a, b, MatchupCount::new(851290, 9966, 851048));
    m.set(b, a, MatchupCount::new(851048, 9966, 851290));
    m.save(&path).unwrap();
    let back = CountsMatrix::load(&path).unwrap();
    assert_eq!(back.complete_entries(), 2);
    assert_eq!(back.get(b, a).wins, 851048);
    std::fs::write(&path, b"PKTP").unwrap();
    assert!(CountsMatrix::load(&path).is_err());
}
