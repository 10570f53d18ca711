//! Gap-encoded dynamic bitvector.
//!
//! `B = 1 0^{s_1-1} 1 0^{s_2-1} ... 1 0^{s_m-1}` is stored as the partial-sum
//! sequence `s_1..s_m`, so space depends on the number of ones rather than on
//! the length. Every query reduces to `search`/`sum` on the [`Spsi`]. A
//! nonempty vector always starts with a 1; zeros can be deleted, ones cannot.
//!
//! Bit positions are 0-based and `rank1` is inclusive: `rank1(i)` counts the
//! ones in `B[0..=i]`.

use crate::error::{out_of_range, Error, Result};
use crate::spsi::Spsi;

#[derive(Clone, Debug, Default)]
pub struct GapBitvector {
    ps: Spsi,
}

impl GapBitvector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a vector from explicit bits; the first bit must be 1.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let mut bv = GapBitvector::new();
        for (i, &b) in bits.iter().enumerate() {
            bv.insert_bit(i, b)?;
        }
        Ok(bv)
    }

    /// Logical length in bits.
    #[inline]
    pub fn len(&self) -> usize {
        self.ps.total() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.ps.is_empty()
    }

    /// Number of set bits.
    #[inline]
    pub fn ones(&self) -> usize {
        self.ps.len()
    }

    pub fn access(&self, i: usize) -> Result<bool> {
        if i >= self.len() {
            return out_of_range("bit", i, self.len());
        }
        let (_, start) = self.ps.search_with_prefix(i as u64 + 1)?;
        Ok(start == i as u64)
    }

    /// Ones in `B[0..=i]`.
    pub fn rank1(&self, i: usize) -> Result<usize> {
        if i >= self.len() {
            return out_of_range("bit", i, self.len());
        }
        self.ps.search(i as u64 + 1)
    }

    /// `(rank1(i), B[i])` from a single descent.
    pub fn rank1_access(&self, i: usize) -> Result<(usize, bool)> {
        if i >= self.len() {
            return out_of_range("bit", i, self.len());
        }
        let (block, start) = self.ps.search_with_prefix(i as u64 + 1)?;
        Ok((block, start == i as u64))
    }

    /// Position of the `i`-th one, `i` counted from 1.
    pub fn select1(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.ones() {
            return out_of_range("one", i, self.ones());
        }
        Ok(self.ps.sum(i - 1)? as usize)
    }

    /// Inserts bit `b` so that it lands at position `i`.
    pub fn insert_bit(&mut self, i: usize, b: bool) -> Result<()> {
        if i > self.len() {
            return out_of_range("bit", i, self.len());
        }
        match (i, b) {
            (0, false) => Err(Error::Contract(
                "a gap-encoded bitvector must start with a 1".into(),
            )),
            (_, false) => {
                let block = self.ps.search(i as u64)?;
                self.ps.update(block, 1)
            }
            (0, true) => {
                self.ps.insert(0)?;
                self.ps.update(1, 1)
            }
            (_, true) => {
                // split the block holding bit i-1: its tail from i on becomes
                // a new block headed by the inserted 1
                let block = self.ps.search(i as u64)?;
                let tail = self.ps.sum(block)? - i as u64;
                self.ps.update(block, -(tail as i64))?;
                self.ps.insert(block)?;
                self.ps.update(block + 1, tail as i64 + 1)
            }
        }
    }

    /// Deletes `B[i]`, which must be a 0.
    pub fn delete0(&mut self, i: usize) -> Result<()> {
        if i >= self.len() {
            return out_of_range("bit", i, self.len());
        }
        let (block, start) = self.ps.search_with_prefix(i as u64 + 1)?;
        if start == i as u64 {
            return Err(Error::Contract(format!("delete0({i}) on a set bit")));
        }
        self.ps.update(block, -1)
    }

    pub fn to_bits(&self) -> Vec<bool> {
        let mut bits = Vec::with_capacity(self.len());
        for gap in self.ps.to_vec() {
            bits.push(true);
            bits.extend(std::iter::repeat_n(false, gap as usize - 1));
        }
        bits
    }

    /// Gap lengths `s_1..s_m`.
    pub fn gaps(&self) -> Vec<u64> {
        self.ps.to_vec()
    }

    pub fn node_count(&self) -> usize {
        self.ps.node_count()
    }

    pub fn visits(&self) -> u64 {
        self.ps.visits()
    }

    pub fn audit(&self) -> Result<()> {
        self.ps.audit()?;
        if self.ps.to_vec().contains(&0) {
            return Err(Error::Corrupt("zero-length gap".into()));
        }
        Ok(())
    }
}
