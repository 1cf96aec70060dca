//! Betti numbers over the two-element field by dense bit-packed elimination.
//! Independent of the persistence reduction; intended for small complexes.

use fixedbitset::FixedBitSet;

use crate::complex::SimplicialComplex;

use super::boundary_matrices;

fn rank_f2(mut rows: Vec<FixedBitSet>) -> usize {
    let mut rank = 0;
    let ncols = rows.first().map_or(0, FixedBitSet::len);
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].contains(col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in 0..rows.len() {
            if r != rank && rows[r].contains(col) {
                rows[r].symmetric_difference_with(&pivot);
            }
        }
        rank += 1;
    }
    rank
}

/// Unreduced Betti numbers with coefficients in the two-element field.
pub fn betti_f2(k: &SimplicialComplex) -> Vec<usize> {
    let f = k.f_vector();
    let boundaries = boundary_matrices(k);
    let mut ranks = vec![0usize; f.len() + 1];
    for b in &boundaries {
        // Transpose so rows are the d-faces.
        let mut rows = vec![FixedBitSet::with_capacity(b.rows); b.cols()];
        for (j, col) in b.columns.iter().enumerate() {
            for &(i, _) in col {
                rows[j].insert(i as usize);
            }
        }
        ranks[b.dim] = rank_f2(rows);
    }
    (0..f.len()).map(|d| f[d] - ranks[d] - ranks[d + 1]).collect()
}
