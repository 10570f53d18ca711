//! Dynamic string over a small integer alphabet with access, rank, select and
//! insert.
//!
//! Implemented as a wavelet matrix whose levels are [`DynBitVec`]s: one level
//! per bit of the symbol width, most significant bit first. Every operation
//! costs `O(log sigma)` bitvector operations of `O(log n)` each.

use crate::bitvec::DynBitVec;
use crate::error::{out_of_range, Error, Result};

#[derive(Clone, Debug)]
pub struct DynSequence {
    levels: Vec<DynBitVec>,
    counts: Vec<usize>,
    width: u32,
}

impl DynSequence {
    /// An empty sequence over symbols `0..sigma`.
    pub fn new(sigma: usize) -> Self {
        assert!(sigma >= 1, "alphabet must not be empty");
        let width = (usize::BITS - (sigma - 1).leading_zeros()).max(1);
        DynSequence {
            levels: (0..width).map(|_| DynBitVec::new()).collect(),
            counts: vec![0; sigma],
            width,
        }
    }

    pub fn sigma(&self) -> usize {
        self.counts.len()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.levels[0].len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Total occurrences of `c`.
    pub fn count(&self, c: u16) -> usize {
        self.counts.get(c as usize).copied().unwrap_or(0)
    }

    #[inline]
    fn bit(&self, c: u16, level: usize) -> bool {
        (c >> (self.width as usize - 1 - level)) & 1 == 1
    }

    fn check_symbol(&self, c: u16) -> Result<()> {
        if (c as usize) < self.sigma() {
            Ok(())
        } else {
            out_of_range("symbol", c as usize, self.sigma())
        }
    }

    pub fn access(&self, i: usize) -> Result<u16> {
        if i >= self.len() {
            return out_of_range("position", i, self.len());
        }
        let mut pos = i;
        let mut c = 0u16;
        for level in &self.levels {
            let (bit, r) = level.access_rank(pos)?;
            c = (c << 1) | bit as u16;
            pos = if bit { level.zeros() + r } else { r };
        }
        Ok(c)
    }

    /// Occurrences of `c` in positions `[0, i)`.
    pub fn rank(&self, c: u16, i: usize) -> Result<usize> {
        if i > self.len() {
            return out_of_range("position", i, self.len());
        }
        self.check_symbol(c)?;
        if i == 0 || self.counts[c as usize] == 0 {
            return Ok(0);
        }
        if i == self.len() {
            return Ok(self.counts[c as usize]);
        }
        let (mut lo, mut hi) = (0, i);
        for (l, level) in self.levels.iter().enumerate() {
            if self.bit(c, l) {
                let z = level.zeros();
                lo = z + level.rank1(lo)?;
                hi = z + level.rank1(hi)?;
            } else {
                lo = level.rank0(lo)?;
                hi = level.rank0(hi)?;
            }
            if lo == hi {
                return Ok(0);
            }
        }
        Ok(hi - lo)
    }

    /// `(rank(c, i), self[i] == c)` for `i < len`. The two share their walk
    /// down the levels until the bits of `self[i]` and `c` part ways.
    pub fn rank_and_match(&self, c: u16, i: usize) -> Result<(usize, bool)> {
        if i >= self.len() {
            return out_of_range("position", i, self.len());
        }
        self.check_symbol(c)?;
        let (mut lo, mut hi) = (0, i);
        let mut same = true;
        for (l, level) in self.levels.iter().enumerate() {
            let cb = self.bit(c, l);
            let z = level.zeros();
            if same {
                let (b, r) = level.access_rank(hi)?;
                let r_c = if b == cb { r } else { hi - r };
                same = b == cb;
                hi = if cb { z + r_c } else { r_c };
            } else {
                hi = if cb {
                    z + level.rank1(hi)?
                } else {
                    level.rank0(hi)?
                };
            }
            lo = if cb {
                z + level.rank1(lo)?
            } else {
                level.rank0(lo)?
            };
            if !same && lo == hi {
                return Ok((0, false));
            }
        }
        Ok((hi - lo, same))
    }

    /// `(self[i], rank(self[i], i))` in one walk.
    pub fn access_and_rank(&self, i: usize) -> Result<(u16, usize)> {
        if i >= self.len() {
            return out_of_range("position", i, self.len());
        }
        let (mut lo, mut pos) = (0, i);
        let mut c = 0u16;
        for level in &self.levels {
            let (bit, r) = level.access_rank(pos)?;
            c = (c << 1) | bit as u16;
            let z = level.zeros();
            if bit {
                pos = z + r;
                lo = z + level.rank1(lo)?;
            } else {
                pos = r;
                lo = level.rank0(lo)?;
            }
        }
        Ok((c, pos - lo))
    }

    /// Position of the `k`-th occurrence of `c`, `k` counted from 1.
    pub fn select(&self, c: u16, k: usize) -> Result<usize> {
        self.check_symbol(c)?;
        if k == 0 || k > self.counts[c as usize] {
            return out_of_range("occurrence", k, self.counts[c as usize]);
        }
        // start of c's block on the bottom level
        let mut start = 0;
        for (l, level) in self.levels.iter().enumerate() {
            start = if self.bit(c, l) {
                level.zeros() + level.rank1(start)?
            } else {
                level.rank0(start)?
            };
        }
        let mut pos = start + k - 1;
        for (l, level) in self.levels.iter().enumerate().rev() {
            pos = if self.bit(c, l) {
                level.select1(pos - level.zeros() + 1)?
            } else {
                level.select0(pos + 1)?
            };
        }
        Ok(pos)
    }

    /// Inserts `c` so that it becomes the symbol at position `i`.
    pub fn insert(&mut self, i: usize, c: u16) -> Result<()> {
        if i > self.len() {
            return out_of_range("position", i, self.len());
        }
        self.check_symbol(c)?;
        let mut pos = i;
        for l in 0..self.levels.len() {
            let bit = self.bit(c, l);
            let level = &mut self.levels[l];
            let r = level.insert_rank(pos, bit)?;
            pos = if bit { level.zeros() + r } else { r };
        }
        self.counts[c as usize] += 1;
        Ok(())
    }

    pub fn to_vec(&self) -> Vec<u16> {
        (0..self.len())
            .map(|i| self.access(i).expect("in range"))
            .collect()
    }

    pub fn node_count(&self) -> usize {
        self.levels.iter().map(DynBitVec::node_count).sum()
    }

    pub fn visits(&self) -> u64 {
        self.levels.iter().map(DynBitVec::visits).sum()
    }

    /// Checks every level's counters and the per-symbol totals against a scan.
    pub fn audit(&self) -> Result<()> {
        for level in &self.levels {
            level.audit()?;
            if level.len() != self.len() {
                return Err(Error::Corrupt("wavelet levels differ in length".into()));
            }
        }
        let mut counts = vec![0; self.sigma()];
        for c in self.to_vec() {
            *counts
                .get_mut(c as usize)
                .ok_or_else(|| Error::Corrupt(format!("symbol {c} outside alphabet")))? += 1;
        }
        if counts != self.counts {
            return Err(Error::Corrupt("per-symbol counts drifted".into()));
        }
        Ok(())
    }
}
