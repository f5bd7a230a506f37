//! Search programs for the system `a^x + b^y = c^z`, `a^X + b^Y = c^Z`.
//!
//! Every scan walks an outer index (a list position, a value of `z`, a value
//! of `Y`, …) and may be restricted to a half-open window of that index and to
//! one residue class of a worker partition. Survivors carry the outer index at
//! which they were produced, so the union of partial runs sorts back into the
//! exact order of a single uninterrupted run.

pub mod c97;
pub mod final_sieve;
pub mod inject;
pub mod prefilter;
pub mod scans;
pub mod steps;
pub mod theorem3;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SieveError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("bad checkpoint line: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Bounds(#[from] xdio_bounds::BoundsError),
    #[error(transparent)]
    Arith(#[from] xdio_arith::ArithError),
}

/// Worker `index` of `count`; it owns the outer indices `i ≡ index (mod count)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Partition {
    pub index: u32,
    pub count: u32,
}

impl Partition {
    pub const SINGLE: Partition = Partition { index: 0, count: 1 };

    pub fn new(index: u32, count: u32) -> Result<Self, SieveError> {
        if count == 0 || index >= count {
            return Err(SieveError::Config(format!("partition {index}/{count} is empty")));
        }
        Ok(Self { index, count })
    }

    pub fn owns(&self, outer: usize) -> bool {
        outer % self.count as usize == self.index as usize
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.count)
    }
}

impl FromStr for Partition {
    type Err = SieveError;
    fn from_str(s: &str) -> Result<Self, SieveError> {
        let (i, n) = s.split_once('/').ok_or_else(|| SieveError::Config(format!("partition {s:?} is not i/n")))?;
        let p = |v: &str| v.trim().parse::<u32>().map_err(|_| SieveError::Config(format!("partition {s:?}")));
        Partition::new(p(i)?, p(n)?)
    }
}

/// A resumable position: the next outer index still to be processed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub stage: String,
    pub cursor: usize,
    pub config_hash: String,
}

impl Checkpoint {
    /// `stage, cursor, config-hash`
    pub fn to_line(&self) -> String {
        format!("{}, {}, {}", self.stage, self.cursor, self.config_hash)
    }

    pub fn parse(line: &str) -> Result<Self, SieveError> {
        let parts: Vec<&str> = line.trim().split(',').map(str::trim).collect();
        match parts.as_slice() {
            [stage, cursor, hash] if !stage.is_empty() && !hash.is_empty() => Ok(Self {
                stage: stage.to_string(),
                cursor: cursor.parse().map_err(|_| SieveError::Checkpoint(line.to_string()))?,
                config_hash: hash.to_string(),
            }),
            _ => Err(SieveError::Checkpoint(line.to_string())),
        }
    }
}

/// Window, partition and checkpoint hook for one scan invocation.
pub struct Control<'a> {
    pub start: usize,
    pub end: Option<usize>,
    pub partition: Partition,
    /// Emit a checkpoint after this many owned outer indices (0 disables).
    pub checkpoint_every: usize,
    pub on_checkpoint: Option<&'a mut dyn FnMut(usize)>,
    /// Stop after this many owned outer indices, leaving the scan incomplete.
    pub budget: Option<usize>,
}

impl Default for Control<'_> {
    fn default() -> Self {
        Self { start: 0, end: None, partition: Partition::SINGLE, checkpoint_every: 0, on_checkpoint: None, budget: None }
    }
}

impl<'a> Control<'a> {
    pub fn window(start: usize, end: usize) -> Self {
        Self { start, end: Some(end), ..Self::default() }
    }

    pub fn partitioned(partition: Partition) -> Self {
        Self { partition, ..Self::default() }
    }

    /// Drives `body` over the owned outer indices in `[start, min(end, len))`.
    /// Returns `(next cursor, complete)`.
    pub fn run(&mut self, len: usize, mut body: impl FnMut(usize)) -> (usize, bool) {
        let end = self.end.map_or(len, |e| e.min(len));
        let mut done = 0usize;
        let mut i = self.start;
        while i < end {
            if self.budget.is_some_and(|b| done >= b) {
                return (i, false);
            }
            if self.partition.owns(i) {
                body(i);
                done += 1;
                if self.checkpoint_every > 0 && done.is_multiple_of(self.checkpoint_every) {
                    if let Some(cb) = self.on_checkpoint.as_mut() {
                        cb(i + 1);
                    }
                }
            }
            i += 1;
        }
        (end, true)
    }
}

/// Result of one scan call. `items` are `(outer index, record)` pairs in
/// production order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOutcome<T> {
    pub items: Vec<(usize, T)>,
    pub next_cursor: usize,
    pub complete: bool,
    /// Work counters, keyed by name, in a fixed order.
    pub counters: Vec<(&'static str, u64)>,
}

impl<T: Clone> ScanOutcome<T> {
    pub fn records(&self) -> Vec<T> {
        self.items.iter().map(|(_, t)| t.clone()).collect()
    }

    /// Union of partial outcomes over disjoint windows or partitions, restored
    /// to single-run order. The merge is associative and commutative.
    pub fn merge(parts: Vec<ScanOutcome<T>>) -> ScanOutcome<T> {
        let mut items = Vec::new();
        let mut counters: Vec<(&'static str, u64)> = Vec::new();
        let mut complete = true;
        let mut next = 0;
        for p in parts {
            complete &= p.complete;
            next = next.max(p.next_cursor);
            for (k, v) in p.counters {
                match counters.iter_mut().find(|(n, _)| *n == k) {
                    Some(slot) => slot.1 += v,
                    None => counters.push((k, v)),
                }
            }
            items.extend(p.items);
        }
        // Stable sort keeps the in-index production order.
        items.sort_by_key(|(i, _)| *i);
        ScanOutcome { items, next_cursor: next, complete, counters }
    }
}

pub(crate) struct Counters(Vec<(&'static str, u64)>);

impl Counters {
    pub(crate) fn new(names: &[&'static str]) -> Self {
        Self(names.iter().map(|n| (*n, 0)).collect())
    }

    pub(crate) fn add(&mut self, name: &'static str, v: u64) {
        match self.0.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 += v,
            None => self.0.push((name, v)),
        }
    }

    pub(crate) fn into_vec(self) -> Vec<(&'static str, u64)> {
        self.0
    }
}

/// Arithmetic progression `start, start + step, …` up to `end` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progression {
    pub start: u64,
    pub end: u64,
    pub step: u64,
}

impl Progression {
    pub fn new(start: u64, end: u64, step: u64) -> Self {
        assert!(step > 0, "progression step must be positive");
        Self { start, end, step }
    }

    /// `Y ≡ 4 (mod 6)` from 4 to `y_u`.
    pub fn y_classes(y_u: u64) -> Self {
        Self::new(4, y_u, 6)
    }

    pub fn len(&self) -> usize {
        if self.end < self.start {
            0
        } else {
            ((self.end - self.start) / self.step + 1) as usize
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> u64 {
        self.start + i as u64 * self.step
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }
}

/// `c^k` as a big integer.
pub fn cpow(c: u64, k: u32) -> BigUint {
    BigUint::from(c).pow(k)
}

/// `Some(k)` when `v = c^k` with `k ≥ 1`.
pub fn power_of(v: &BigUint, c: u64) -> Option<u32> {
    if v <= &BigUint::one() {
        return None;
    }
    let mut v = v.clone();
    let mut k = 0;
    while (&v % c).is_zero() {
        v /= c;
        k += 1;
    }
    v.is_one().then_some(k)
}

/// Residues `r (mod c)` with `r³ ≡ ±1` and `r ≢ ±1`: the classes where
/// `e_c(h) = 3`. For `c = 7` this is `{2, 3, 4, 5}`.
pub fn order3_classes(c: u64) -> Vec<u64> {
    (2..c - 1)
        .filter(|&r| {
            let r3 = (r as u128).pow(3) % c as u128;
            r3 == 1 || r3 == c as u128 - 1
        })
        .collect()
}

/// Residues `r (mod c)` with `r² + r + 1 ≡ 0`; `{2, 4}` for `c = 7`.
pub fn cube_root_classes(c: u64) -> Vec<u64> {
    (2..c).filter(|&r| (r as u128 * r as u128 + r as u128 + 1).is_multiple_of(c as u128)).collect()
}

pub fn nu_c(c: u64, mut n: u64) -> u32 {
    let mut e = 0;
    while n > 0 && n.is_multiple_of(c) {
        n /= c;
        e += 1;
    }
    e
}
