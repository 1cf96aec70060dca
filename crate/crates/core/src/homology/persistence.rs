//! Persistent homology of the threshold filtration.
//!
//! Stages are indexed by a winning-probability threshold that decreases
//! from stage to stage, so the complexes grow. A class born at threshold
//! `b` and killed at threshold `d` has `b > d`; classes that survive to the
//! last stage have no death, printed as the 1/2 sentinel.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cards::HolePair;
use crate::complex::{order_complex, SimplicialComplex};
use crate::equity::{relation_at, MatchupSource, Threshold, TieConvention};
use crate::error::{EquityError, HomologyError};
use crate::probability::{format_exact, half, Probability};

#[derive(Clone, Debug)]
pub struct Filtration {
    stages: Vec<(Probability, SimplicialComplex)>,
}

impl Filtration {
    /// Stages must have strictly decreasing thresholds, identical vertex
    /// labels, and each complex must contain the previous one.
    pub fn new(stages: Vec<(Probability, SimplicialComplex)>) -> Result<Self, HomologyError> {
        for i in 1..stages.len() {
            if stages[i].0 >= stages[i - 1].0 {
                return Err(HomologyError::ThresholdOrder(i));
            }
            if stages[i].1.labels() != stages[i - 1].1.labels() {
                return Err(HomologyError::VertexMismatch(i));
            }
            let (prev, next) = (&stages[i - 1].1, &stages[i].1);
            if let Some(face) = prev.maximal_faces().iter().find(|f| !next.contains(f)) {
                return Err(HomologyError::NotNested {
                    stage: i - 1,
                    next: i,
                    face: prev.face_labels(face),
                });
            }
        }
        Ok(Filtration { stages })
    }

    pub fn stages(&self) -> &[(Probability, SimplicialComplex)] {
        &self.stages
    }

    pub fn thresholds(&self) -> Vec<Probability> {
        self.stages.iter().map(|s| s.0).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersistencePoint {
    pub dim: usize,
    pub birth: Probability,
    /// `None` for classes alive in the last stage.
    pub death: Option<Probability>,
}

impl PersistencePoint {
    pub fn death_or_sentinel(&self) -> Probability {
        self.death.unwrap_or_else(half)
    }

    /// Alive in the stage with threshold `p`.
    pub fn alive_at(&self, p: &Probability) -> bool {
        self.birth >= *p && self.death.is_none_or(|d| d < *p)
    }
}

impl fmt::Display for PersistencePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}",
            self.dim,
            format_exact(&self.birth),
            format_exact(&self.death_or_sentinel())
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    pub points: Vec<PersistencePoint>,
}

impl PersistenceDiagram {
    pub fn alive_count(&self, dim: usize, p: &Probability) -> usize {
        self.points.iter().filter(|pt| pt.dim == dim && pt.alive_at(p)).count()
    }

    pub fn in_dimension(&self, dim: usize) -> impl Iterator<Item = &PersistencePoint> {
        self.points.iter().filter(move |pt| pt.dim == dim)
    }
}

impl fmt::Display for PersistenceDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.points {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Column reduction over the two-element field with faces ordered by
/// (birth stage, dimension, lexicographic vertex list).
pub fn persistence(filtration: &Filtration) -> PersistenceDiagram {
    let Some((_, last)) = filtration.stages.last() else {
        return PersistenceDiagram::default();
    };
    let faces = last.faces_by_dimension();

    // Birth stage of each face: the first stage containing it.
    let birth_stage = |face: &[u32]| -> usize {
        let stages = &filtration.stages;
        let (mut lo, mut hi) = (0, stages.len() - 1);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if stages[mid].1.contains(face) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    };

    // (stage, dim, position within its dimension)
    let mut order: Vec<(usize, usize, usize)> = Vec::new();
    for (d, list) in faces.iter().enumerate() {
        for (i, face) in list.iter().enumerate() {
            order.push((birth_stage(face), d, i));
        }
    }
    order.sort_unstable();
    let mut global: Vec<Vec<u32>> = faces.iter().map(|l| vec![0; l.len()]).collect();
    for (g, &(_, d, i)) in order.iter().enumerate() {
        global[d][i] = g as u32;
    }

    let mut low_owner: Vec<Option<usize>> = vec![None; order.len()];
    let mut reduced: Vec<Vec<u32>> = Vec::with_capacity(order.len());
    let mut sub = Vec::new();
    for &(_, d, i) in &order {
        let mut col: Vec<u32> = Vec::new();
        if d > 0 {
            let face = faces[d].get(i);
            for skip in 0..=d {
                sub.clear();
                sub.extend(face.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v));
                let pos = faces[d - 1].position(&sub).expect("closed under faces");
                col.push(global[d - 1][pos]);
            }
            col.sort_unstable();
        }
        while let Some(&low) = col.last() {
            match low_owner[low as usize] {
                Some(other) => col = xor_sorted(&col, &reduced[other]),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            low_owner[low as usize] = Some(reduced.len());
        }
        reduced.push(col);
    }

    let thresholds = filtration.thresholds();
    let mut points = Vec::new();
    for (g, &(stage, d, _)) in order.iter().enumerate() {
        if !reduced[g].is_empty() {
            continue; // this face kills a class
        }
        match low_owner[g] {
            Some(killer) => {
                let death_stage = order[killer].0;
                if death_stage != stage {
                    points.push(PersistencePoint {
                        dim: d,
                        birth: thresholds[stage],
                        death: Some(thresholds[death_stage]),
                    });
                }
            }
            None => points.push(PersistencePoint {
                dim: d,
                birth: thresholds[stage],
                death: None,
            }),
        }
    }
    points.sort_by(|a, b| {
        a.dim
            .cmp(&b.dim)
            .then_with(|| b.birth.cmp(&a.birth))
            .then_with(|| b.death_or_sentinel().cmp(&a.death_or_sentinel()))
    });
    PersistenceDiagram { points }
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// One stage per distinct winning probability above 1/2 among the
/// vertices, in decreasing order, followed by the strict 1/2 stage (the
/// plain "beats" relation).
pub fn filtration_from_source(
    source: &dyn MatchupSource,
    vertices: &[HolePair],
    tc: TieConvention,
) -> Result<Filtration, EquityError> {
    let base = relation_at(source, vertices, tc, Threshold::half())?;
    let mut probs: Vec<Probability> = base.edges().into_iter().filter_map(|e| e.2).collect();
    probs.sort_unstable_by(|a, b| b.cmp(a));
    probs.dedup();
    let mut stages: Vec<(Probability, SimplicialComplex)> = probs
        .iter()
        .map(|p| (*p, order_complex(&base.filter_edges(|q| q >= p))))
        .collect();
    stages.push((half(), order_complex(&base)));
    Ok(Filtration::new(stages).expect("threshold stages are nested by construction"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Tournament;
    use crate::homology::field::betti_f2;
    use num_rational::Ratio;

    fn weighted_triangle() -> Tournament {
        let mut t = Tournament::new(["a", "b", "c"]).unwrap();
        t.add_edge(0, 1, Some(Ratio::new(591, 1000))).unwrap();
        t.add_edge(1, 2, Some(Ratio::new(504, 1000))).unwrap();
        t.add_edge(2, 0, Some(Ratio::new(620, 1000))).unwrap();
        t
    }

    fn threshold_filtration(t: &Tournament) -> Filtration {
        let mut probs: Vec<Probability> = t.edges().into_iter().filter_map(|e| e.2).collect();
        probs.sort_unstable_by(|a, b| b.cmp(a));
        let mut stages: Vec<_> = probs.iter().map(|p| (*p, order_complex(&t.filter_edges(|q| q >= p)))).collect();
        stages.push((half(), order_complex(t)));
        Filtration::new(stages).unwrap()
    }

    #[test]
    fn circle_born_at_weakest_edge() {
        let f = threshold_filtration(&weighted_triangle());
        let dgm = persistence(&f);
        let h1: Vec<_> = dgm.in_dimension(1).collect();
        assert_eq!(h1.len(), 1);
        assert_eq!(h1[0].birth, Ratio::new(504, 1000));
        assert_eq!(h1[0].death, None);
        // Three components merge as the two strongest edges appear.
        let h0: Vec<_> = dgm.in_dimension(0).collect();
        assert_eq!(h0.len(), 2);
        assert!(h0.iter().any(|p| p.death == Some(Ratio::new(591, 1000))));
        assert!(h0.iter().any(|p| p.death.is_none()));
    }

    #[test]
    fn alive_counts_match_stagewise_betti() {
        let f = threshold_filtration(&weighted_triangle());
        let dgm = persistence(&f);
        for (p, k) in f.stages() {
            let b = betti_f2(k);
            for (d, &bd) in b.iter().enumerate() {
                assert_eq!(dgm.alive_count(d, p), bd, "threshold {p}, dim {d}");
            }
        }
    }

    #[test]
    fn constant_filtration() {
        let k = order_complex(&weighted_triangle());
        let f = Filtration::new(vec![(Ratio::new(3, 4), k.clone()), (half(), k.clone())]).unwrap();
        let dgm = persistence(&f);
        assert!(dgm.points.iter().all(|p| p.death.is_none() && p.birth == Ratio::new(3, 4)));
        assert_eq!(dgm.in_dimension(0).count(), 1);
        assert_eq!(dgm.in_dimension(1).count(), 1);
    }

    #[test]
    fn rejects_bad_filtrations() {
        let full = order_complex(&weighted_triangle());
        let sparse = order_complex(&weighted_triangle().filter_edges(|_| false));
        let err = Filtration::new(vec![(Ratio::new(3, 4), full.clone()), (half(), sparse.clone())]).unwrap_err();
        assert!(matches!(err, HomologyError::NotNested { stage: 0, next: 1, .. }));
        let err = Filtration::new(vec![(half(), sparse), (Ratio::new(3, 4), full)]).unwrap_err();
        assert_eq!(err, HomologyError::ThresholdOrder(1));
    }

    #[test]
    fn display_uses_exact_thresholds() {
        let f = threshold_filtration(&weighted_triangle());
        let text = persistence(&f).to_string();
        assert!(text.contains("1 63/125 1/2"), "{text}");
    }
}
