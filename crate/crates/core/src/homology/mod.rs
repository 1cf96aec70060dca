//! Simplicial homology with integer coefficients, plus persistence over the
//! two-element field.
//!
//! Faces are oriented by their sorted vertex order; removing the vertex in
//! position `i` contributes sign `(-1)^i` to the boundary.

pub mod field;
pub mod persistence;
pub mod snf;
pub(crate) mod sparse;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::complex::{FaceList, SimplicialComplex};

pub use persistence::{filtration_from_source, persistence, Filtration, PersistenceDiagram, PersistencePoint};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};

/// Boundary map from `dim`-faces (columns) to `(dim - 1)`-faces (rows).
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub dim: usize,
    pub rows: usize,
    /// Sparse columns, `(row, ±1)` sorted by row.
    pub columns: Vec<Vec<(u32, i64)>>,
}

impl BoundaryMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m.set(i as usize, j, BigInt::from(v));
            }
        }
        m
    }

    /// `self * next` as sparse columns; `next` must be the boundary one
    /// dimension up.
    pub fn compose(&self, next: &BoundaryMatrix) -> Vec<Vec<(u32, i64)>> {
        assert_eq!(next.rows, self.cols(), "boundaries are not consecutive");
        next.columns
            .iter()
            .map(|col| {
                let mut acc: std::collections::BTreeMap<u32, i64> = Default::default();
                for &(k, a) in col {
                    for &(i, b) in &self.columns[k as usize] {
                        *acc.entry(i).or_default() += a * b;
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect()
    }
}

fn boundary_of(faces: &FaceList, lower: &FaceList) -> BoundaryMatrix {
    let dim = faces.dim();
    let mut columns = Vec::with_capacity(faces.len());
    let mut sub = vec![0u32; dim];
    for face in faces.iter() {
        let mut col: Vec<(u32, i64)> = Vec::with_capacity(dim + 1);
        for skip in 0..=dim {
            let mut k = 0;
            for (i, &v) in face.iter().enumerate() {
                if i != skip {
                    sub[k] = v;
                    k += 1;
                }
            }
            let row = lower.position(&sub).expect("complex is closed under faces");
            col.push((row as u32, if skip % 2 == 0 { 1 } else { -1 }));
        }
        col.sort_unstable_by_key(|e| e.0);
        columns.push(col);
    }
    BoundaryMatrix {
        dim,
        rows: lower.len(),
        columns,
    }
}

/// `∂_1, ..., ∂_dim`; entry `d - 1` of the result is `∂_d`.
pub fn boundary_matrices(k: &SimplicialComplex) -> Vec<BoundaryMatrix> {
    let faces = k.faces_by_dimension();
    boundary_matrices_of(&faces)
}

fn boundary_matrices_of(faces: &[FaceList]) -> Vec<BoundaryMatrix> {
    (1..faces.len()).map(|d| boundary_of(&faces[d], &faces[d - 1])).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.betti > 0 {
            parts.push(format!("Z^{}", self.betti));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub reduced: bool,
    /// Indexed by degree, `0..=dim`.
    pub groups: Vec<HomologyGroup>,
}

impl HomologyReport {
    pub fn betti(&self, k: usize) -> usize {
        self.groups.get(k).map_or(0, |g| g.betti)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.groups.iter().any(|g| !g.torsion.is_empty())
    }

    pub fn euler_characteristic(&self) -> i64 {
        let chi: i64 = self
            .groups
            .iter()
            .enumerate()
            .map(|(k, g)| if k % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum();
        if self.reduced {
            chi + 1
        } else {
            chi
        }
    }

    /// Degrees with a nontrivial group.
    pub fn support(&self) -> Vec<usize> {
        (0..self.groups.len()).filter(|&k| !self.groups[k].is_trivial()).collect()
    }

    /// True when every group is trivial.
    pub fn is_acyclic(&self) -> bool {
        self.support().is_empty()
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.groups.iter().enumerate() {
            writeln!(f, "{k}: {g}")?;
        }
        Ok(())
    }
}

/// Integer homology: `betti_k = f_k - rank ∂_k - rank ∂_{k+1}`, torsion from
/// the invariant factors of `∂_{k+1}`. Reduced homology subtracts the
/// augmentation from `H_0` of a nonempty complex.
pub fn homology(k: &SimplicialComplex, reduced: bool) -> HomologyReport {
    let faces = k.faces_by_dimension();
    homology_of_faces(&faces, reduced)
}

pub(crate) fn homology_of_faces(faces: &[FaceList], reduced: bool) -> HomologyReport {
    let top = faces.len();
    if top == 0 {
        // The empty complex: reduced H_{-1} = Z is not represented.
        return HomologyReport { reduced, groups: Vec::new() };
    }
    // rank[d] = rank of ∂_d for d in 1..top; torsion[d] likewise.
    let mut rank = vec![0usize; top + 1];
    let mut torsion: Vec<Vec<BigInt>> = vec![Vec::new(); top + 1];
    // Top-down so unit pivots of ∂_{d+1} can clear columns of ∂_d.
    let mut cleared: Vec<bool> = Vec::new();
    for d in (1..top).rev() {
        let m = boundary_of(&faces[d], &faces[d - 1]);
        let r = sparse::reduce(&m.columns, m.rows, &cleared);
        rank[d] = r.rank;
        torsion[d] = r.torsion;
        cleared = vec![false; faces[d - 1].len()];
        for row in r.unit_pivot_rows {
            cleared[row as usize] = true;
        }
    }
    let groups = (0..top)
        .map(|d| {
            let mut betti = faces[d].len() - rank[d] - rank[d + 1];
            if reduced && d == 0 {
                betti -= 1;
            }
            HomologyGroup {
                betti,
                torsion: torsion[d + 1].iter().map(|t| t.magnitude().clone()).collect(),
            }
        })
        .collect();
    HomologyReport { reduced, groups }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{full_simplex, join, order_complex, sphere_boundary, Tournament};

    fn rps() -> SimplicialComplex {
        let mut t = Tournament::new(["R", "P", "S"]).unwrap();
        t.add_edge_by_label("P", "R", None).unwrap();
        t.add_edge_by_label("S", "P", None).unwrap();
        t.add_edge_by_label("R", "S", None).unwrap();
        order_complex(&t)
    }

    #[test]
    fn rps_is_a_circle() {
        let h = homology(&rps(), true);
        assert_eq!(h.betti_numbers(), vec![0, 1]);
        assert!(!h.has_torsion());
        assert_eq!(h.to_string(), "0: 0\n1: Z^1\n");
        let u = homology(&rps(), false);
        assert_eq!(u.betti_numbers(), vec![1, 1]);
    }

    #[test]
    fn triangle_boundary_columns_sum_to_zero() {
        let b = boundary_matrices(&rps());
        assert_eq!(b.len(), 1);
        let d1 = &b[0];
        assert_eq!((d1.rows, d1.cols()), (3, 3));
        for col in &d1.columns {
            assert_eq!(col.iter().map(|e| e.1).sum::<i64>(), 0);
            assert_eq!(col.len(), 2);
        }
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let k = full_simplex(&["a", "b", "c"]);
        let b = boundary_matrices(&k);
        assert!(b[0].compose(&b[1]).iter().all(Vec::is_empty));
        let dense = b[0].to_dense().mul(&b[1].to_dense());
        assert!(dense.is_zero());
        let k = full_simplex(&["a", "b", "c", "d", "e"]);
        let b = boundary_matrices(&k);
        for w in b.windows(2) {
            assert!(w[0].compose(&w[1]).iter().all(Vec::is_empty));
        }
    }

    #[test]
    fn suspension_of_circle_is_two_sphere() {
        let s0 = sphere_boundary(&["n", "s"]);
        let s1 = sphere_boundary(&["a", "b", "c"]);
        let s2 = join(&s0, &s1).unwrap();
        assert_eq!(homology(&s2, true).betti_numbers(), vec![0, 0, 1]);
    }

    #[test]
    fn cone_is_acyclic() {
        let s1 = sphere_boundary(&["a", "b", "c"]);
        let cone = join(&s1, &full_simplex(&["apex"])).unwrap();
        assert!(homology(&cone, true).is_acyclic());
        assert_eq!(homology(&cone, false).betti_numbers(), vec![1, 0, 0]);
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // Six-vertex triangulation of RP^2.
        let faces = vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 5, 1],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![3, 4, 1],
            vec![4, 5, 2],
            vec![5, 1, 3],
        ];
        let k = SimplicialComplex::from_faces(["0", "1", "2", "3", "4", "5"], faces).unwrap();
        let h = homology(&k, false);
        assert_eq!(h.betti_numbers(), vec![1, 0, 0]);
        assert_eq!(h.groups[1].torsion, vec![BigUint::from(2u32)]);
        assert_eq!(h.to_string(), "0: Z^1\n1: Z/2\n2: 0\n");
        assert_eq!(h.euler_characteristic(), k.euler_characteristic());
    }

    #[test]
    fn two_point_complex() {
        let k = SimplicialComplex::from_faces(["a", "b"], Vec::<Vec<u32>>::new()).unwrap();
        assert_eq!(homology(&k, true).betti_numbers(), vec![1]);
        assert_eq!(homology(&k, false).betti_numbers(), vec![2]);
    }
}
