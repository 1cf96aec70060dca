//! Integer column reduction of sparse boundary matrices.
//!
//! Columns are reduced left to right by their lowest nonzero row, using
//! unimodular column operations only (subtracting a multiple of a pivot
//! column, or an extended-gcd combination of two columns). The result is a
//! column echelon form: every nonzero column has a distinct lowest row.
//!
//! If every pivot is a unit, all invariant factors are 1. Otherwise the unit
//! pivots are split off (their block is unimodular) and the small residual
//! matrix goes through the dense Smith normal form.
//!
//! Coefficients start as `i64` with checked arithmetic; on overflow the
//! reduction is redone with big integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::snf::{smith_normal_form, IntMatrix};

pub(crate) trait Coeff: Clone + std::fmt::Debug + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn add(&self, other: &Self) -> Option<Self>;
    /// `Some(q)` when `self = q * d` exactly.
    fn exact_div(&self, d: &Self) -> Option<Self>;
    /// `(g, x, y)` with `x*a + y*b = g = gcd(a, b) > 0`, and `a/g`, `b/g`.
    fn xgcd(a: &Self, b: &Self) -> Option<(Self, Self, Self, Self, Self)>;
    fn to_bigint(&self) -> BigInt;
}

impl Coeff for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        if *d != 0 && self.checked_rem(*d)? == 0 {
            self.checked_div(*d)
        } else {
            None
        }
    }
    fn xgcd(a: &Self, b: &Self) -> Option<(Self, Self, Self, Self, Self)> {
        let e = i128::from(*a).extended_gcd(&i128::from(*b));
        let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
        if g < 0 {
            g = -g;
            x = -x;
            y = -y;
        }
        let conv = |v: i128| i64::try_from(v).ok();
        Some((conv(g)?, conv(x)?, conv(y)?, conv(i128::from(*a) / g)?, conv(i128::from(*b) / g)?))
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            return None;
        }
        let (q, r) = self.div_rem(d);
        Zero::is_zero(&r).then_some(q)
    }
    fn xgcd(a: &Self, b: &Self) -> Option<(Self, Self, Self, Self, Self)> {
        let e = a.extended_gcd(b);
        let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
        if g.is_negative() {
            g = -g;
            x = -x;
            y = -y;
        }
        let (ag, bg) = (a / &g, b / &g);
        Some((g, x, y, ag, bg))
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Sparse column: `(row, coefficient)` sorted by row, no zero entries.
pub(crate) type Column<T> = Vec<(u32, T)>;

#[derive(Debug)]
pub(crate) struct Overflow;

/// `alpha * x + beta * y`.
fn combine<T: Coeff>(alpha: &T, x: &Column<T>, beta: &T, y: &Column<T>) -> Result<Column<T>, Overflow> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let one = T::from_i64(1);
    let scale = |c: &T, v: &T| -> Result<T, Overflow> {
        if *c == one {
            Ok(v.clone())
        } else {
            c.mul(v).ok_or(Overflow)
        }
    };
    while i < x.len() || j < y.len() {
        let (row, v) = match (x.get(i), y.get(j)) {
            (Some((rx, vx)), Some((ry, vy))) if rx == ry => {
                i += 1;
                j += 1;
                (*rx, scale(alpha, vx)?.add(&scale(beta, vy)?).ok_or(Overflow)?)
            }
            (Some((rx, vx)), Some((ry, _))) if rx < ry => {
                i += 1;
                (*rx, scale(alpha, vx)?)
            }
            (Some((rx, vx)), None) => {
                i += 1;
                (*rx, scale(alpha, vx)?)
            }
            (_, Some((ry, vy))) => {
                j += 1;
                (*ry, scale(beta, vy)?)
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((row, v));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Reduction {
    pub rank: usize,
    /// Invariant factors other than 1.
    pub torsion: Vec<BigInt>,
    /// Rows that are the lowest entry of a column with a unit pivot. The
    /// matching faces one dimension down have columns that reduce to zero.
    pub unit_pivot_rows: Vec<u32>,
}

/// Reduces `columns` (skipping those marked in `cleared`), and returns rank
/// and invariant factors.
pub(crate) fn reduce(columns: &[Column<i64>], nrows: usize, cleared: &[bool]) -> Reduction {
    match reduce_with::<i64>(columns, nrows, cleared) {
        Ok(r) => r,
        Err(Overflow) => {
            let big: Vec<Column<BigInt>> = columns
                .iter()
                .map(|c| c.iter().map(|(r, v)| (*r, BigInt::from(*v))).collect())
                .collect();
            reduce_with::<BigInt>(&big, nrows, cleared).expect("big integers do not overflow")
        }
    }
}

fn reduce_with<T: Coeff>(columns: &[Column<T>], nrows: usize, cleared: &[bool]) -> Result<Reduction, Overflow> {
    const NONE: u32 = u32::MAX;
    let mut pivot_of_row = vec![NONE; nrows];
    let mut pivots: Vec<Column<T>> = Vec::new();

    for (j, original) in columns.iter().enumerate() {
        if cleared.get(j).copied().unwrap_or(false) {
            continue;
        }
        let mut col = original.clone();
        while let Some((low, v)) = col.last().cloned() {
            let p = pivot_of_row[low as usize];
            if p == NONE {
                pivot_of_row[low as usize] = pivots.len() as u32;
                pivots.push(col);
                break;
            }
            let pcol = &pivots[p as usize];
            let u = pcol.last().expect("pivot column nonempty").1.clone();
            if let Some(q) = v.exact_div(&u) {
                col = combine(&T::from_i64(1), &col, &q.neg().ok_or(Overflow)?, pcol)?;
            } else {
                // [pivot, col] <- [pivot, col] * [[x, -b'], [y, a']], determinant 1.
                let (_, x, y, ug, vg) = T::xgcd(&u, &v).ok_or(Overflow)?;
                let new_pivot = combine(&x, pcol, &y, &col)?;
                let new_col = combine(&vg.neg().ok_or(Overflow)?, pcol, &ug, &col)?;
                pivots[p as usize] = new_pivot;
                col = new_col;
            }
        }
    }

    let rank = pivots.len();
    let is_unit: Vec<bool> = pivots.iter().map(|c| c.last().expect("nonempty").1.is_unit()).collect();
    let unit_pivot_rows: Vec<u32> = pivots
        .iter()
        .zip(&is_unit)
        .filter(|(_, &u)| u)
        .map(|(c, _)| c.last().expect("nonempty").0)
        .collect();

    if is_unit.iter().all(|&u| u) {
        return Ok(Reduction { rank, torsion: Vec::new(), unit_pivot_rows });
    }

    // Split off the unit block: clear unit-pivot rows from the residual
    // columns, working from the bottom row up.
    let mut residual: Vec<Column<T>> = Vec::new();
    for (c, _) in pivots.iter().zip(&is_unit).filter(|(_, &u)| !u) {
        let mut col = c.clone();
        loop {
            let hit = col.iter().rev().find(|(r, _)| {
                let p = pivot_of_row[*r as usize];
                p != NONE && is_unit[p as usize]
            });
            let Some((r, v)) = hit.cloned() else { break };
            let pcol = &pivots[pivot_of_row[r as usize] as usize];
            let u = &pcol.last().expect("nonempty").1;
            let q = v.exact_div(u).ok_or(Overflow)?;
            col = combine(&T::from_i64(1), &col, &q.neg().ok_or(Overflow)?, pcol)?;
        }
        residual.push(col);
    }
    let mut rows: Vec<u32> = residual.iter().flat_map(|c| c.iter().map(|(r, _)| *r)).collect();
    rows.sort_unstable();
    rows.dedup();
    let mut dense = IntMatrix::zeros(rows.len(), residual.len());
    for (j, col) in residual.iter().enumerate() {
        for (r, v) in col {
            let i = rows.binary_search(r).expect("row collected above");
            dense.set(i, j, v.to_bigint());
        }
    }
    let snf = smith_normal_form(&dense);
    debug_assert_eq!(snf.rank, residual.len());
    Ok(Reduction {
        rank,
        torsion: snf.torsion(),
        unit_pivot_rows,
    })
}
