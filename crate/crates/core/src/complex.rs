//! Tournaments and their order complexes.
//!
//! A [`Tournament`] is an antisymmetric "beats" relation on labelled
//! vertices. Its order complex has a face for every vertex subset on which
//! the relation restricts to a strict total order. A tournament on a set is
//! transitive exactly when it contains no directed 3-cycle, so a set is a
//! face iff each of its 3-subsets is one.
//!
//! Complexes are stored by their maximal faces.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::error::{ComplexError, FormatError};
use crate::probability::{format_exact, parse_probability, Probability};

#[derive(Clone, Debug)]
pub struct Tournament {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    out: Vec<FixedBitSet>,
    inn: Vec<FixedBitSet>,
    probs: BTreeMap<(usize, usize), Probability>,
}

impl Tournament {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, ComplexError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(ComplexError::DuplicateVertex(l.clone()));
            }
        }
        let n = labels.len();
        Ok(Tournament {
            labels,
            index,
            out: vec![FixedBitSet::with_capacity(n); n],
            inn: vec![FixedBitSet::with_capacity(n); n],
            probs: BTreeMap::new(),
        })
    }

    /// Records `u` beats `v`.
    pub fn add_edge(&mut self, u: usize, v: usize, prob: Option<Probability>) -> Result<(), ComplexError> {
        let n = self.len();
        if u >= n {
            return Err(ComplexError::VertexIndex(u));
        }
        if v >= n {
            return Err(ComplexError::VertexIndex(v));
        }
        if u == v {
            return Err(ComplexError::SelfLoop(self.labels[u].clone()));
        }
        if self.out[v].contains(u) {
            return Err(ComplexError::NotAntisymmetric(self.labels[u].clone(), self.labels[v].clone()));
        }
        self.out[u].insert(v);
        self.inn[v].insert(u);
        if let Some(p) = prob {
            self.probs.insert((u, v), p);
        }
        Ok(())
    }

    pub fn add_edge_by_label(&mut self, u: &str, v: &str, prob: Option<Probability>) -> Result<(), ComplexError> {
        let (u, v) = (self.vertex(u)?, self.vertex(v)?);
        self.add_edge(u, v, prob)
    }

    pub fn vertex(&self, label: &str) -> Result<usize, ComplexError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| ComplexError::UnknownVertex(label.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    #[inline]
    pub fn beats(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    #[inline]
    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v) || self.out[v].contains(u)
    }

    pub fn edge_probability(&self, u: usize, v: usize) -> Option<Probability> {
        self.probs.get(&(u, v)).copied()
    }

    /// All edges `(winner, loser, probability)` in index order.
    pub fn edges(&self) -> Vec<(usize, usize, Option<Probability>)> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            for v in self.out[u].ones() {
                out.push((u, v, self.edge_probability(u, v)));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(|s| s.count_ones(..)).sum()
    }

    /// Same vertices, keeping only edges whose probability passes `keep`.
    /// Edges without a probability are dropped.
    pub fn filter_edges(&self, keep: impl Fn(&Probability) -> bool) -> Tournament {
        let mut t = Tournament::new(self.labels.clone()).expect("labels already distinct");
        for (&(u, v), p) in &self.probs {
            if keep(p) {
                t.add_edge(u, v, Some(*p)).expect("subrelation of an antisymmetric relation");
            }
        }
        t
    }

    /// Sub-tournament induced on `vertices` (in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Result<Tournament, ComplexError> {
        let labels: Vec<String> = vertices
            .iter()
            .map(|&v| self.labels.get(v).cloned().ok_or(ComplexError::VertexIndex(v)))
            .collect::<Result<_, _>>()?;
        let mut t = Tournament::new(labels)?;
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if self.beats(u, v) {
                    t.add_edge(i, j, self.edge_probability(u, v))?;
                }
            }
        }
        Ok(t)
    }

    /// Edge-list text: one `u v [prob]` line per edge, and a bare `u` line
    /// for every vertex without edges.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for v in 0..self.len() {
            if self.out[v].is_clear() && self.inn[v].is_clear() {
                let _ = writeln!(s, "{}", self.labels[v]);
            }
        }
        for (u, v, p) in self.edges() {
            match p {
                Some(p) => {
                    let _ = writeln!(s, "{} {} {}", self.labels[u], self.labels[v], format_exact(&p));
                }
                None => {
                    let _ = writeln!(s, "{} {}", self.labels[u], self.labels[v]);
                }
            }
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Tournament, FormatError> {
        let mut labels: Vec<String> = Vec::new();
        let mut seen: HashSet<String> = HashSet::new();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let err = |msg: &str| FormatError::Line { line: i + 1, msg: msg.to_string() };
            if fields.len() > 3 {
                return Err(err("expected `u v [prob]`"));
            }
            for f in fields.iter().take(2) {
                if seen.insert(f.to_string()) {
                    labels.push(f.to_string());
                }
            }
            if fields.len() >= 2 {
                let prob = match fields.get(2) {
                    Some(p) => Some(parse_probability(p).ok_or_else(|| err("bad probability"))?),
                    None => None,
                };
                edges.push((i + 1, fields[0].to_string(), fields[1].to_string(), prob));
            }
        }
        let mut t = Tournament::new(labels).map_err(|e| FormatError::Malformed(e.to_string()))?;
        for (line, u, v, p) in edges {
            t.add_edge_by_label(&u, &v, p)
                .map_err(|e| FormatError::Line { line, msg: e.to_string() })?;
        }
        Ok(t)
    }
}

/// A downward-closed family of vertex subsets, stored by maximal faces.
/// Every vertex is a face.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    maximal: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// Builds a complex generated by `faces` (any family; non-maximal
    /// members are dropped and missing vertices added as singletons).
    pub fn from_faces<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        faces: impl IntoIterator<Item = Vec<u32>>,
    ) -> Result<Self, ComplexError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_distinct(&labels)?;
        let n = labels.len();
        let mut all: Vec<Vec<u32>> = Vec::new();
        for mut f in faces {
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.iter().find(|&&v| v as usize >= n) {
                return Err(ComplexError::VertexIndex(v as usize));
            }
            all.push(f);
        }
        let mut covered = FixedBitSet::with_capacity(n);
        for f in &all {
            for &v in f {
                covered.insert(v as usize);
            }
        }
        for v in 0..n {
            if !covered.contains(v) {
                all.push(vec![v as u32]);
            }
        }
        all.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        all.dedup();
        let mut kept: Vec<Vec<u32>> = Vec::new();
        let mut kept_sets: Vec<FixedBitSet> = Vec::new();
        for f in all {
            if f.is_empty() {
                continue;
            }
            let set = to_bitset(&f, n);
            if kept_sets.iter().any(|k| set.is_subset(k)) {
                continue;
            }
            kept.push(f);
            kept_sets.push(set);
        }
        Ok(Self::from_maximal_unchecked(labels, kept))
    }

    pub(crate) fn from_maximal_unchecked(labels: Vec<String>, mut maximal: Vec<Vec<u32>>) -> Self {
        for f in &mut maximal {
            f.sort_unstable();
        }
        maximal.sort_unstable();
        SimplicialComplex { labels, maximal }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn maximal_faces(&self) -> &[Vec<u32>] {
        &self.maximal
    }

    /// -1 for the empty complex.
    pub fn dimension(&self) -> isize {
        self.maximal.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    /// Faces are given as sorted vertex index lists.
    pub fn contains(&self, face: &[u32]) -> bool {
        if face.is_empty() {
            return true;
        }
        self.maximal.iter().any(|m| is_sorted_subset(face, m))
    }

    pub fn vertex_index(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }

    pub fn face_labels(&self, face: &[u32]) -> Vec<String> {
        face.iter().map(|&v| self.labels[v as usize].clone()).collect()
    }

    /// Visits every nonempty face exactly once, in lexicographic order of
    /// sorted vertex lists.
    pub fn for_each_face(&self, mut visit: impl FnMut(&[u32])) {
        let n = self.labels.len();
        let sets: Vec<FixedBitSet> = self.maximal.iter().map(|f| to_bitset(f, n)).collect();
        let all: Vec<u32> = (0..sets.len() as u32).collect();
        let mut face = Vec::new();
        walk_faces(&sets, &all, 0, &mut face, &mut visit, n);
    }

    /// All faces grouped by dimension, each list in lexicographic order.
    pub fn faces_by_dimension(&self) -> Vec<FaceList> {
        let dim = self.dimension();
        if dim < 0 {
            return Vec::new();
        }
        let mut lists: Vec<FaceList> = (0..=dim as usize).map(FaceList::new).collect();
        self.for_each_face(|f| lists[f.len() - 1].push(f));
        lists
    }

    /// Face counts for dimensions 0, 1, ...
    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.dimension();
        if d < 0 {
            return Vec::new();
        }
        let mut f = vec![0usize; d as usize + 1];
        self.for_each_face(|face| f[face.len() - 1] += 1);
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Maximal faces as sets of labels.
    pub fn labelled_maximal_faces(&self) -> BTreeSet<BTreeSet<String>> {
        self.maximal
            .iter()
            .map(|f| f.iter().map(|&v| self.labels[v as usize].clone()).collect())
            .collect()
    }

    /// Same vertex labels and same faces, independent of vertex numbering.
    pub fn same_faces(&self, other: &SimplicialComplex) -> bool {
        let a: BTreeSet<&String> = self.labels.iter().collect();
        let b: BTreeSet<&String> = other.labels.iter().collect();
        a == b && self.labelled_maximal_faces() == other.labelled_maximal_faces()
    }

    /// One maximal face per line, labels separated by spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for f in &self.maximal {
            let names: Vec<&str> = f.iter().map(|&v| self.labels[v as usize].as_str()).collect();
            let _ = writeln!(s, "{}", names.join(" "));
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<SimplicialComplex, FormatError> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, u32> = HashMap::new();
        let mut faces = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut face = Vec::new();
            for tok in line.split_whitespace() {
                let id = *index.entry(tok.to_string()).or_insert_with(|| {
                    labels.push(tok.to_string());
                    (labels.len() - 1) as u32
                });
                face.push(id);
            }
            faces.push(face);
        }
        SimplicialComplex::from_faces(labels, faces).map_err(|e| FormatError::Malformed(e.to_string()))
    }
}

fn check_distinct(labels: &[String]) -> Result<(), ComplexError> {
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(ComplexError::DuplicateVertex(l.clone()));
        }
    }
    Ok(())
}

fn to_bitset(face: &[u32], n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for &v in face {
        s.insert(v as usize);
    }
    s
}

fn is_sorted_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

fn walk_faces(
    sets: &[FixedBitSet],
    containing: &[u32],
    from: usize,
    face: &mut Vec<u32>,
    visit: &mut impl FnMut(&[u32]),
    n: usize,
) {
    let mut candidates = FixedBitSet::with_capacity(n);
    for &m in containing {
        candidates.union_with(&sets[m as usize]);
    }
    for v in candidates.ones().filter(|&v| v >= from) {
        let sub: Vec<u32> = containing
            .iter()
            .copied()
            .filter(|&m| sets[m as usize].contains(v))
            .collect();
        face.push(v as u32);
        visit(face);
        walk_faces(sets, &sub, v + 1, face, visit, n);
        face.pop();
    }
}

/// Faces of one dimension, stored flat with stride `dim + 1`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceList {
    dim: usize,
    verts: Vec<u32>,
}

impl FaceList {
    pub fn new(dim: usize) -> Self {
        FaceList { dim, verts: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.verts.len() / (self.dim + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    /// Faces must be pushed in increasing lexicographic order.
    pub fn push(&mut self, face: &[u32]) {
        debug_assert_eq!(face.len(), self.dim + 1);
        debug_assert!(self.is_empty() || self.get(self.len() - 1) < face);
        self.verts.extend_from_slice(face);
    }

    #[inline]
    pub fn get(&self, i: usize) -> &[u32] {
        let w = self.dim + 1;
        &self.verts[i * w..(i + 1) * w]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.verts.chunks_exact(self.dim + 1)
    }

    pub fn position(&self, face: &[u32]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(face) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// True iff the tournament restricted to `s` is a strict total order.
///
/// Checked through scores: a tournament on `k` vertices is transitive iff
/// every pair is comparable and the out-degrees are `0, 1, ..., k - 1`.
pub fn is_simplex(t: &Tournament, s: &[usize]) -> Result<bool, ComplexError> {
    if let Some(&v) = s.iter().find(|&&v| v >= t.len()) {
        return Err(ComplexError::VertexIndex(v));
    }
    let mut vs = s.to_vec();
    vs.sort_unstable();
    vs.dedup();
    let k = vs.len();
    let mut scores = Vec::with_capacity(k);
    for &u in &vs {
        let mut score = 0;
        for &v in &vs {
            if u == v {
                continue;
            }
            if !t.comparable(u, v) {
                return Ok(false);
            }
            if t.beats(u, v) {
                score += 1;
            }
        }
        scores.push(score);
    }
    scores.sort_unstable();
    Ok(scores.iter().enumerate().all(|(i, &sc)| sc == i))
}

pub fn is_simplex_by_label(t: &Tournament, s: &[&str]) -> Result<bool, ComplexError> {
    let idx: Vec<usize> = s.iter().map(|l| t.vertex(l)).collect::<Result<_, _>>()?;
    is_simplex(t, &idx)
}

/// Maximal transitive subsets, by Bron–Kerbosch over the comparability
/// graph where a candidate survives only if it closes no 3-cycle with the
/// current chain. No pivoting: a pivot's non-neighbours no longer cover all
/// maximal faces once the constraint involves triples.
pub fn order_complex(t: &Tournament) -> SimplicialComplex {
    let n = t.len();
    let mut maximal = Vec::new();
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x = FixedBitSet::with_capacity(n);
    let mut chain = Vec::new();
    extend_chain(t, &mut chain, p, x, &mut maximal);
    SimplicialComplex::from_maximal_unchecked(t.labels.clone(), maximal)
}

fn extend_chain(
    t: &Tournament,
    chain: &mut Vec<u32>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Vec<u32>>,
) {
    if p.is_clear() {
        if x.is_clear() && !chain.is_empty() {
            out.push(chain.clone());
        }
        return;
    }
    let order: Vec<usize> = p.ones().collect();
    for v in order {
        let ext = extension_set(t, chain, v);
        let mut np = p.clone();
        np.intersect_with(&ext);
        let mut nx = x.clone();
        nx.intersect_with(&ext);
        chain.push(v as u32);
        extend_chain(t, chain, np, nx, out);
        chain.pop();
        p.set(v, false);
        x.insert(v);
    }
}

/// Vertices `w` such that `chain + v + w` is transitive, assuming `chain + v`
/// and `chain + w` both are.
fn extension_set(t: &Tournament, chain: &[u32], v: usize) -> FixedBitSet {
    // v -> w is fine unless w beats something that beats v.
    let mut below = t.out[v].clone();
    // w -> v is fine unless w is beaten by something v beats.
    let mut above = t.inn[v].clone();
    for &c in chain {
        let c = c as usize;
        if t.beats(c, v) {
            below.difference_with(&t.inn[c]);
        } else {
            above.difference_with(&t.out[c]);
        }
    }
    below.union_with(&above);
    below
}

/// Faces of the join are unions of a face of each operand.
pub fn join(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
    if let Some(l) = a.labels.iter().find(|l| b.labels.contains(l)) {
        return Err(ComplexError::JoinOverlap(l.clone()));
    }
    let offset = a.labels.len() as u32;
    let mut labels = a.labels.clone();
    labels.extend(b.labels.iter().cloned());
    let maximal = if b.maximal.is_empty() {
        a.maximal.clone()
    } else if a.maximal.is_empty() {
        b.maximal.iter().map(|f| f.iter().map(|v| v + offset).collect()).collect()
    } else {
        let mut m = Vec::with_capacity(a.maximal.len() * b.maximal.len());
        for fa in &a.maximal {
            for fb in &b.maximal {
                let mut f = fa.clone();
                f.extend(fb.iter().map(|v| v + offset));
                m.push(f);
            }
        }
        m
    };
    Ok(SimplicialComplex::from_maximal_unchecked(labels, maximal))
}

pub fn f_vector(k: &SimplicialComplex) -> Vec<usize> {
    k.f_vector()
}

/// Boundary of a simplex: `k >= 2` vertices, every proper nonempty subset a face.
pub fn sphere_boundary(labels: &[&str]) -> SimplicialComplex {
    let n = labels.len();
    assert!(n >= 2, "the boundary of a point has no vertices");
    let faces: Vec<Vec<u32>> = (0..n as u32)
        .map(|skip| (0..n as u32).filter(|&v| v != skip).collect())
        .collect();
    SimplicialComplex::from_maximal_unchecked(labels.iter().map(|s| s.to_string()).collect(), faces)
}

/// The full simplex on the given vertices.
pub fn full_simplex(labels: &[&str]) -> SimplicialComplex {
    let face: Vec<u32> = (0..labels.len() as u32).collect();
    let maximal = if face.is_empty() { Vec::new() } else { vec![face] };
    SimplicialComplex::from_maximal_unchecked(labels.iter().map(|s| s.to_string()).collect(), maximal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rps() -> Tournament {
        let mut t = Tournament::new(["R", "P", "S"]).unwrap();
        t.add_edge_by_label("P", "R", None).unwrap();
        t.add_edge_by_label("S", "P", None).unwrap();
        t.add_edge_by_label("R", "S", None).unwrap();
        t
    }

    fn transitive(k: usize) -> Tournament {
        let mut t = Tournament::new((0..k).map(|i| i.to_string())).unwrap();
        for u in 0..k {
            for v in u + 1..k {
                t.add_edge(u, v, None).unwrap();
            }
        }
        t
    }

    #[test]
    fn tournament_rejects_bad_edges() {
        let mut t = rps();
        assert!(matches!(t.add_edge_by_label("R", "P", None), Err(ComplexError::NotAntisymmetric(..))));
        assert!(matches!(t.add_edge(0, 0, None), Err(ComplexError::SelfLoop(_))));
        assert!(matches!(t.add_edge_by_label("R", "Q", None), Err(ComplexError::UnknownVertex(_))));
        assert!(Tournament::new(["a", "a"]).is_err());
    }

    #[test]
    fn rps_simplices() {
        let t = rps();
        assert!(is_simplex(&t, &[]).unwrap());
        assert!(is_simplex(&t, &[1]).unwrap());
        assert!(is_simplex(&t, &[0, 1]).unwrap());
        assert!(!is_simplex(&t, &[0, 1, 2]).unwrap());
        assert!(is_simplex(&t, &[7]).is_err());
        assert!(is_simplex_by_label(&t, &["R", "X"]).is_err());
    }

    #[test]
    fn rps_complex_is_triangle_boundary() {
        let k = order_complex(&rps());
        assert_eq!(k.f_vector(), vec![3, 3]);
        assert_eq!(k.maximal_faces().len(), 3);
        assert_eq!(k.euler_characteristic(), 0);
    }

    #[test]
    fn transitive_tournament_gives_full_simplex() {
        for k in 1..8 {
            let c = order_complex(&transitive(k));
            assert_eq!(c.maximal_faces().len(), 1);
            let total: usize = c.f_vector().iter().sum();
            assert_eq!(total, (1 << k) - 1);
        }
        assert_eq!(full_simplex(&["a", "b", "c", "d"]).f_vector(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn isolated_vertices_are_faces() {
        let t = Tournament::new(["a", "b"]).unwrap();
        let k = order_complex(&t);
        assert_eq!(k.f_vector(), vec![2]);
        assert!(k.contains(&[0]) && k.contains(&[1]) && !k.contains(&[0, 1]));
    }

    #[test]
    fn join_examples() {
        let s0a = sphere_boundary(&["a", "b"]);
        let s0b = sphere_boundary(&["c", "d"]);
        let square = join(&s0a, &s0b).unwrap();
        assert_eq!(square.f_vector(), vec![4, 4]);
        assert!(join(&s0a, &s0a).is_err());
        let cone = join(&square, &full_simplex(&["apex"])).unwrap();
        assert_eq!(cone.f_vector(), vec![5, 8, 4]);
    }

    #[test]
    fn from_faces_drops_dominated() {
        let k = SimplicialComplex::from_faces(["a", "b", "c", "d"], vec![vec![0, 1, 2], vec![1, 0], vec![2]]).unwrap();
        assert_eq!(k.maximal_faces(), &[vec![0, 1, 2], vec![3]]);
        assert!(SimplicialComplex::from_faces(["a"], vec![vec![3]]).is_err());
    }

    #[test]
    fn text_round_trips() {
        let t = rps();
        let parsed = Tournament::parse_edge_list(&t.to_edge_list()).unwrap();
        assert_eq!(parsed.edge_count(), 3);
        let k = order_complex(&parsed);
        let back = SimplicialComplex::parse_text(&k.to_text()).unwrap();
        assert!(back.same_faces(&order_complex(&t)));

        let with_probs = Tournament::parse_edge_list("a b 0.6\nb c 3/5\nd\n").unwrap();
        assert_eq!(with_probs.len(), 4);
        assert_eq!(with_probs.edge_probability(0, 1), parse_probability("3/5"));
        assert!(Tournament::parse_edge_list("a b\nb a\n").is_err());
        assert!(Tournament::parse_edge_list("a b zz\n").is_err());
    }

    #[test]
    fn face_list_lookup() {
        let k = full_simplex(&["a", "b", "c", "d"]);
        let faces = k.faces_by_dimension();
        assert_eq!(faces.len(), 4);
        assert_eq!(faces[1].len(), 6);
        assert_eq!(faces[1].position(&[1, 3]), Some(4));
        assert_eq!(faces[1].position(&[3, 3]), None);
    }
}
