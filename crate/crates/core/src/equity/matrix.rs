//! The 1326 × 1326 table of matchup counts.
//!
//! Binary layout (little-endian): `b"PKTP"`, `u16` version, `u32` n, then
//! `n * n` records of `u32` wins, ties, losses in row-major pair-index order.
//! Entries that are not a complete enumeration (the diagonal, overlapping
//! pairs, pairs outside a partial run) are stored as zeros.
//!
//! Long runs append finished matchup classes to a checkpoint file
//! (`b"PKCK"`, `u16` version, then 16-byte records `u16 a, u16 b, u32 w,
//! u32 t, u32 l`) so an interrupted job can resume.

use std::collections::{BTreeSet, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use super::{matchup_counts, win_probability, MatchupCount, MatchupSource, TieConvention};
use crate::cards::{canonical_matchup, HolePair, SuitPermutation, NUM_PAIRS};
use crate::error::{EquityError, FormatError, MatrixError};
use crate::probability::{half, Probability};

const MAGIC: [u8; 4] = *b"PKTP";
const CHECKPOINT_MAGIC: [u8; 4] = *b"PKCK";
pub const FORMAT_VERSION: u16 = 1;
const CHECKPOINT_RECORD: usize = 16;

#[derive(Clone, PartialEq, Eq)]
pub struct CountsMatrix {
    entries: Vec<MatchupCount>,
}

impl std::fmt::Debug for CountsMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CountsMatrix({} complete entries)", self.complete_entries())
    }
}

impl Default for CountsMatrix {
    fn default() -> Self {
        Self::empty()
    }
}

impl CountsMatrix {
    pub fn empty() -> Self {
        CountsMatrix {
            entries: vec![MatchupCount::default(); NUM_PAIRS * NUM_PAIRS],
        }
    }

    pub fn n(&self) -> usize {
        NUM_PAIRS
    }

    #[inline]
    pub fn get(&self, a: HolePair, b: HolePair) -> MatchupCount {
        self.entries[a.index() * NUM_PAIRS + b.index()]
    }

    pub fn set(&mut self, a: HolePair, b: HolePair, c: MatchupCount) {
        self.entries[a.index() * NUM_PAIRS + b.index()] = c;
    }

    /// Whether the entry holds a full enumeration.
    pub fn has(&self, a: HolePair, b: HolePair) -> bool {
        self.get(a, b).is_complete()
    }

    pub fn complete_entries(&self) -> usize {
        self.entries.iter().filter(|c| c.is_complete()).count()
    }

    /// Complete entries as `(a, b, counts)` in row-major order.
    pub fn iter_complete(&self) -> impl Iterator<Item = (HolePair, HolePair, MatchupCount)> + '_ {
        self.entries.iter().enumerate().filter(|(_, c)| c.is_complete()).map(|(i, c)| {
            let a = HolePair::from_index(i / NUM_PAIRS).expect("index in range");
            let b = HolePair::from_index(i % NUM_PAIRS).expect("index in range");
            (a, b, *c)
        })
    }

    /// First complete entry whose mirror disagrees, if any.
    pub fn antisymmetry_violation(&self) -> Option<(HolePair, HolePair)> {
        self.iter_complete()
            .find(|&(a, b, c)| self.get(b, a) != c.reversed())
            .map(|(a, b, _)| (a, b))
    }

    /// Matchups won on every board.
    pub fn sweeps(&self) -> Vec<(HolePair, HolePair)> {
        self.iter_complete()
            .filter(|(_, _, c)| c.ties == 0 && c.losses == 0)
            .map(|(a, b, _)| (a, b))
            .collect()
    }

    pub fn write_to(&self, w: impl Write) -> Result<(), FormatError> {
        let mut w = BufWriter::new(w);
        w.write_all(&MAGIC)?;
        w.write_all(&FORMAT_VERSION.to_le_bytes())?;
        w.write_all(&(NUM_PAIRS as u32).to_le_bytes())?;
        for c in &self.entries {
            w.write_all(&c.wins.to_le_bytes())?;
            w.write_all(&c.ties.to_le_bytes())?;
            w.write_all(&c.losses.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<(), FormatError> {
        self.write_to(File::create(path)?)
    }

    pub fn read_from(r: impl Read) -> Result<Self, FormatError> {
        let mut r = BufReader::new(r);
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if magic != MAGIC {
            return Err(FormatError::Magic(magic));
        }
        let mut v = [0u8; 2];
        r.read_exact(&mut v)?;
        let version = u16::from_le_bytes(v);
        if version != FORMAT_VERSION {
            return Err(FormatError::Version(version));
        }
        let mut n = [0u8; 4];
        r.read_exact(&mut n)?;
        let n = u32::from_le_bytes(n) as usize;
        if n != NUM_PAIRS {
            return Err(FormatError::Malformed(format!("matrix size {n}, expected {NUM_PAIRS}")));
        }
        let mut buf = vec![0u8; NUM_PAIRS * NUM_PAIRS * 12];
        r.read_exact(&mut buf)
            .map_err(|_| FormatError::Malformed("matrix file is truncated".into()))?;
        let mut rest = [0u8; 1];
        if r.read(&mut rest)? != 0 {
            return Err(FormatError::Malformed("trailing bytes after matrix".into()));
        }
        let word = |i: usize| u32::from_le_bytes(buf[i..i + 4].try_into().expect("4 bytes"));
        let entries = (0..NUM_PAIRS * NUM_PAIRS)
            .map(|k| MatchupCount::new(word(12 * k), word(12 * k + 4), word(12 * k + 8)))
            .collect();
        Ok(CountsMatrix { entries })
    }

    pub fn load(path: &Path) -> Result<Self, FormatError> {
        Self::read_from(File::open(path)?)
    }

    /// One line per complete entry under the header
    /// `a_index,b_index,a_text,b_text,wins,ties,losses`.
    pub fn write_csv(&self, w: impl Write) -> Result<(), FormatError> {
        let mut w = BufWriter::new(w);
        writeln!(w, "a_index,b_index,a_text,b_text,wins,ties,losses")?;
        for (a, b, c) in self.iter_complete() {
            writeln!(w, "{},{},{},{},{},{},{}", a.index(), b.index(), a, b, c.wins, c.ties, c.losses)?;
        }
        w.flush()?;
        Ok(())
    }
}

impl MatchupSource for CountsMatrix {
    fn counts(&self, a: HolePair, b: HolePair) -> Result<MatchupCount, EquityError> {
        if a.overlaps(b) {
            return Err(super::overlap_error(a, b));
        }
        let c = self.get(a, b);
        if c.is_complete() {
            Ok(c)
        } else {
            Err(EquityError::MissingEntry(a, b))
        }
    }
}

/// Canonical representatives of the ordered disjoint matchups within
/// `universe`, sorted.
pub fn canonical_classes(universe: &[HolePair]) -> BTreeSet<(HolePair, HolePair)> {
    let mut out = BTreeSet::new();
    for &a in universe {
        for &b in universe {
            if let Ok((ca, cb, _)) = canonical_matchup(a, b) {
                out.insert((ca, cb));
            }
        }
    }
    out
}

/// Settings for computing (part of) the matrix.
pub struct MatrixJob<'a> {
    /// Pairs whose mutual matchups are computed.
    pub universe: Vec<HolePair>,
    /// Compute one matchup per suit class and copy it to the others.
    pub use_symmetry: bool,
    /// Worker threads; 0 picks the number of cores.
    pub jobs: usize,
    pub checkpoint: Option<PathBuf>,
    /// Keep records already in the checkpoint file instead of starting over.
    pub resume: bool,
    /// Called with (finished, total) after every matchup.
    pub progress: Option<&'a (dyn Fn(usize, usize) + Sync)>,
}

impl Default for MatrixJob<'_> {
    fn default() -> Self {
        MatrixJob {
            universe: HolePair::all().collect(),
            use_symmetry: true,
            jobs: 0,
            checkpoint: None,
            resume: false,
            progress: None,
        }
    }
}

impl MatrixJob<'_> {
    /// The matchups that must actually be enumerated: one per class, and
    /// only one direction of each mirrored pair.
    pub fn work_items(&self) -> Result<Vec<(HolePair, HolePair)>, MatrixError> {
        if self.universe.is_empty() {
            return Err(MatrixError::EmptyUniverse);
        }
        if self.use_symmetry {
            let members: BTreeSet<HolePair> = self.universe.iter().copied().collect();
            for &p in &self.universe {
                for perm in SuitPermutation::all() {
                    if !members.contains(&p.permute_suits(&perm)) {
                        return Err(MatrixError::NotSuitClosed(p));
                    }
                }
            }
            let classes = canonical_classes(&self.universe);
            Ok(classes
                .iter()
                .copied()
                .filter(|&(a, b)| {
                    let (ra, rb, _) = canonical_matchup(b, a).expect("disjoint");
                    (a, b) <= (ra, rb)
                })
                .collect())
        } else {
            let mut pairs: Vec<HolePair> = self.universe.clone();
            pairs.sort_unstable();
            pairs.dedup();
            let mut out = Vec::new();
            for (i, &a) in pairs.iter().enumerate() {
                for &b in &pairs[i + 1..] {
                    if !a.overlaps(b) {
                        out.push((a, b));
                    }
                }
            }
            Ok(out)
        }
    }

    pub fn run(&self) -> Result<CountsMatrix, MatrixError> {
        let work = self.work_items()?;
        let mut done: HashMap<(HolePair, HolePair), MatchupCount> = HashMap::new();
        let mut writer = None;
        if let Some(path) = &self.checkpoint {
            if self.resume && path.exists() {
                done = read_checkpoint(path)?;
                truncate_to_records(path)?;
                writer = Some(OpenOptions::new().append(true).open(path)?);
            } else {
                let mut f = File::create(path)?;
                f.write_all(&CHECKPOINT_MAGIC)?;
                f.write_all(&FORMAT_VERSION.to_le_bytes())?;
                f.flush()?;
                writer = Some(f);
            }
        }
        let todo: Vec<(HolePair, HolePair)> = work.iter().copied().filter(|k| !done.contains_key(k)).collect();
        let total = work.len();
        let finished = AtomicUsize::new(total - todo.len());
        let writer = Mutex::new(writer);
        let results = Mutex::new(Vec::with_capacity(todo.len()));

        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| MatrixError::Pool(e.to_string()))?;
        pool.install(|| {
            todo.par_iter().try_for_each(|&(a, b)| -> Result<(), MatrixError> {
                let c = matchup_counts(a, b).expect("work items are disjoint");
                if let Some(f) = writer.lock().expect("checkpoint lock").as_mut() {
                    f.write_all(&checkpoint_record(a, b, c))?;
                }
                results.lock().expect("results lock").push(((a, b), c));
                let n = finished.fetch_add(1, Ordering::Relaxed) + 1;
                if let Some(cb) = self.progress {
                    cb(n, total);
                }
                Ok(())
            })
        })?;
        if let Some(f) = writer.lock().expect("checkpoint lock").as_mut() {
            f.flush()?;
        }
        done.extend(results.into_inner().expect("results lock"));

        let mut m = CountsMatrix::empty();
        for &a in &self.universe {
            for &b in &self.universe {
                if a.overlaps(b) {
                    continue;
                }
                let c = if self.use_symmetry {
                    let (ca, cb, _) = canonical_matchup(a, b).expect("disjoint");
                    match done.get(&(ca, cb)) {
                        Some(c) => *c,
                        None => {
                            let (ra, rb, _) = canonical_matchup(b, a).expect("disjoint");
                            done[&(ra, rb)].reversed()
                        }
                    }
                } else if a < b {
                    done[&(a, b)]
                } else {
                    done[&(b, a)].reversed()
                };
                m.set(a, b, c);
            }
        }
        Ok(m)
    }
}

/// All 1326 × 1326 matchups.
pub fn full_matrix(use_symmetry: bool, jobs: usize) -> Result<CountsMatrix, MatrixError> {
    MatrixJob {
        use_symmetry,
        jobs,
        ..MatrixJob::default()
    }
    .run()
}

fn checkpoint_record(a: HolePair, b: HolePair, c: MatchupCount) -> [u8; CHECKPOINT_RECORD] {
    let mut r = [0u8; CHECKPOINT_RECORD];
    r[0..2].copy_from_slice(&(a.index() as u16).to_le_bytes());
    r[2..4].copy_from_slice(&(b.index() as u16).to_le_bytes());
    r[4..8].copy_from_slice(&c.wins.to_le_bytes());
    r[8..12].copy_from_slice(&c.ties.to_le_bytes());
    r[12..16].copy_from_slice(&c.losses.to_le_bytes());
    r
}

/// Complete records of a checkpoint file; a torn final record is ignored.
pub fn read_checkpoint(path: &Path) -> Result<HashMap<(HolePair, HolePair), MatchupCount>, FormatError> {
    let mut bytes = Vec::new();
    File::open(path)?.read_to_end(&mut bytes)?;
    if bytes.len() < 6 {
        return Err(FormatError::Malformed("checkpoint header is truncated".into()));
    }
    let magic: [u8; 4] = bytes[..4].try_into().expect("4 bytes");
    if magic != CHECKPOINT_MAGIC {
        return Err(FormatError::Magic(magic));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != FORMAT_VERSION {
        return Err(FormatError::Version(version));
    }
    let mut out = HashMap::new();
    for rec in bytes[6..].chunks_exact(CHECKPOINT_RECORD) {
        let word = |i: usize| u32::from_le_bytes(rec[i..i + 4].try_into().expect("4 bytes"));
        let pair = |i: usize| {
            HolePair::from_index(u16::from_le_bytes([rec[i], rec[i + 1]]) as usize)
                .map_err(|e| FormatError::Malformed(format!("checkpoint record: {e}")))
        };
        let c = MatchupCount::new(word(4), word(8), word(12));
        if !c.is_complete() {
            return Err(FormatError::Malformed("checkpoint record with wrong board total".into()));
        }
        out.insert((pair(0)?, pair(2)?), c);
    }
    Ok(out)
}

fn truncate_to_records(path: &Path) -> Result<(), FormatError> {
    let len = std::fs::metadata(path)?.len();
    let whole = 6 + (len.saturating_sub(6) / CHECKPOINT_RECORD as u64) * CHECKPOINT_RECORD as u64;
    if whole != len {
        OpenOptions::new().write(true).open(path)?.set_len(whole)?;
    }
    Ok(())
}

/// The smallest winning probability strictly above 1/2 and every matchup
/// that attains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosestCall {
    pub probability: Probability,
    pub matchups: Vec<(HolePair, HolePair)>,
}

pub fn closest_call(m: &CountsMatrix, tc: TieConvention) -> Option<ClosestCall> {
    let mut best: Option<ClosestCall> = None;
    for (a, b, c) in m.iter_complete() {
        let p = win_probability(&c, tc);
        if p <= half() {
            continue;
        }
        match &mut best {
            Some(cur) if p > cur.probability => {}
            Some(cur) if p == cur.probability => cur.matchups.push((a, b)),
            _ => {
                best = Some(ClosestCall {
                    probability: p,
                    matchups: vec![(a, b)],
                })
            }
        }
    }
    best
}
