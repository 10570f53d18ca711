//! Suffix-array samples kept at the extremes of BWT runs.
//!
//! Each symbol has an ordered set of samples `⟨j, k⟩` (text position `j`,
//! BWT position `k`) keyed by `k`. Processing a position applies one of three
//! rules, chosen by how many samples already sit in the BWT run of `k`:
//!
//! 1. none: store `k` as a singleton;
//! 2. a singleton: it and `k` become the open/close pair, ordered by `k`;
//! 3. an open/close pair: `k` replaces whichever end it lies beyond, or is
//!    dropped if it falls between them.
//!
//! So each run holds at most two samples, the leftmost and rightmost
//! positions visited so far, which is enough to answer "does `Va` occur in
//! the processed prefix" with one ordered-set lookup.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use arrayvec::ArrayVec;

use crate::alphabet::Symbol;
use crate::error::{Error, Result};
use crate::rlbwt::{Interval, RunBounds};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleKind {
    Singleton,
    Open,
    Close,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplePair {
    /// Text position.
    pub j: usize,
    /// BWT position.
    pub k: usize,
    pub kind: SampleKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Entry {
    j: usize,
    kind: SampleKind,
}

#[derive(Clone, Debug)]
pub struct Sampler {
    trees: Vec<BTreeMap<usize, Entry>>,
    total: usize,
    max_total: usize,
    ops: u64,
}

impl Default for Sampler {
    fn default() -> Self {
        Self::new()
    }
}

impl Sampler {
    pub fn new() -> Self {
        Sampler {
            trees: vec![BTreeMap::new(); Symbol::SIGMA],
            total: 0,
            max_total: 0,
            ops: 0,
        }
    }

    /// Samples currently stored.
    pub fn total_samples(&self) -> usize {
        self.total
    }

    /// High-water mark of [`Sampler::total_samples`].
    pub fn max_samples(&self) -> usize {
        self.max_total
    }

    /// Ordered-set operations performed so far.
    pub fn ops(&self) -> u64 {
        self.ops
    }

    fn hits(&mut self, c: Symbol, range: RangeInclusive<usize>) -> ArrayVec<SamplePair, 3> {
        self.ops += 1;
        self.trees[c.code() as usize]
            .range(range)
            .take(3)
            .map(|(&k, e)| SamplePair {
                j: e.j,
                k,
                kind: e.kind,
            })
            .collect()
    }

    fn put(&mut self, c: Symbol, j: usize, k: usize, kind: SampleKind) {
        self.ops += 1;
        if self.trees[c.code() as usize]
            .insert(k, Entry { j, kind })
            .is_none()
        {
            self.total += 1;
            self.max_total = self.max_total.max(self.total);
        }
    }

    fn take(&mut self, c: Symbol, k: usize) {
        self.ops += 1;
        if self.trees[c.code() as usize].remove(&k).is_some() {
            self.total -= 1;
        }
    }

    /// Applies the update rules to sample `⟨j, k⟩`, where `run` is the BWT
    /// run containing `k`.
    pub fn process(&mut self, j: usize, k: usize, run: RunBounds) -> Result<()> {
        let c = run.c;
        if c == Symbol::TERM_BWT {
            return Err(Error::Contract("'#' is never sampled".into()));
        }
        if !(run.l..=run.r).contains(&k) {
            return Err(Error::Contract(format!(
                "position {k} outside its run [{}, {}]",
                run.l, run.r
            )));
        }
        let hits = self.hits(c, run.l..=run.r);
        use SampleKind::*;
        match hits.as_slice() {
            [] => self.put(c, j, k, Singleton),
            [s] if s.kind == Singleton && s.k != k => {
                self.take(c, s.k);
                if k < s.k {
                    self.put(c, j, k, Open);
                    self.put(c, s.j, s.k, Close);
                } else {
                    self.put(c, s.j, s.k, Open);
                    self.put(c, j, k, Close);
                }
            }
            [open, close]
                if open.kind == Open && close.kind == Close && k != open.k && k != close.k =>
            {
                if k < open.k {
                    self.take(c, open.k);
                    self.put(c, j, k, Open);
                } else if k > close.k {
                    self.take(c, close.k);
                    self.put(c, j, k, Close);
                }
            }
            other => {
                return Err(Error::Corrupt(format!(
                    "run [{}, {}] of {c} holds samples {other:?} when processing ⟨{j}, {k}⟩",
                    run.l, run.r
                )))
            }
        }
        Ok(())
    }

    /// Whether some sample of `c` has its BWT position in `iv`.
    pub fn exists_sample(&self, c: Symbol, iv: Interval) -> bool {
        self.first_in(c, iv).is_some()
    }

    /// Text position of the sample of `c` with the smallest BWT position in `iv`.
    pub fn locate(&self, c: Symbol, iv: Interval) -> Result<usize> {
        self.first_in(c, iv)
            .map(|p| p.j)
            .ok_or_else(|| Error::Contract(format!("no sample of {c} in [{}, {}]", iv.l, iv.r)))
    }

    fn first_in(&self, c: Symbol, iv: Interval) -> Option<SamplePair> {
        self.trees
            .get(c.code() as usize)?
            .range(iv.l..=iv.r)
            .next()
            .map(|(&k, e)| SamplePair {
                j: e.j,
                k,
                kind: e.kind,
            })
    }

    /// All samples of `c` in BWT order.
    pub fn samples(&self, c: Symbol) -> Vec<SamplePair> {
        self.trees[c.code() as usize]
            .iter()
            .map(|(&k, e)| SamplePair {
                j: e.j,
                k,
                kind: e.kind,
            })
            .collect()
    }

    /// Checks the per-run shape invariants over `runs` (all runs of a frozen
    /// BWT): each run holds nothing, one singleton, or an open before a close.
    /// Returns the runs (by left bound) that currently hold samples.
    pub fn check_runs(&self, runs: &[RunBounds]) -> Result<Vec<usize>> {
        // one merge pass: runs arrive in BWT order, and so does each tree
        let mut cursors: Vec<_> = self.trees.iter().map(|t| t.iter().peekable()).collect();
        let mut occupied = Vec::new();
        let mut hits: ArrayVec<SampleKind, 3> = ArrayVec::new();
        for run in runs {
            if run.c == Symbol::TERM_BWT {
                continue;
            }
            let cur = &mut cursors[run.c.code() as usize];
            if let Some((&k, _)) = cur.peek() {
                if k < run.l {
                    return Err(Error::Corrupt(format!(
                        "sample of {} at {k} lies outside its runs",
                        run.c
                    )));
                }
            }
            hits.clear();
            while let Some((_, e)) = cur.next_if(|(&k, _)| k <= run.r) {
                if hits.try_push(e.kind).is_err() {
                    break;
                }
            }
            let ok = matches!(
                hits.as_slice(),
                [] | [SampleKind::Singleton] | [SampleKind::Open, SampleKind::Close]
            );
            if !ok {
                return Err(Error::Corrupt(format!(
                    "run [{}, {}] of {} holds {hits:?}",
                    run.l, run.r, run.c
                )));
            }
            if !hits.is_empty() {
                occupied.push(run.l);
            }
        }
        for (c, cur) in cursors.iter_mut().enumerate() {
            if let Some((&k, _)) = cur.peek() {
                return Err(Error::Corrupt(format!(
                    "sample of symbol code {c} at {k} lies outside its runs"
                )));
            }
        }
        Ok(occupied)
    }
}
