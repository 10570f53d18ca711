//! Plain dynamic bitvector: packed 64-bit words in the leaves of a counted
//! tree. Used for the levels of the wavelet matrix in [`crate::dynseq`], where
//! the bits have no run structure worth gap-encoding.

use crate::error::{out_of_range, Result};
use crate::tree::{Block, Summary, Tree};

const WORDS: usize = 8;
const BITS: usize = WORDS * 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct BitSummary {
    len: usize,
    ones: usize,
}

impl Summary for BitSummary {
    #[inline]
    fn add(&mut self, other: &Self) {
        self.len += other.len;
        self.ones += other.ones;
    }
}

/// Up to `BITS` bits, plus one spare word so an insert can overflow before the
/// tree splits the block.
#[derive(Clone, Debug)]
pub(crate) struct BitBlock {
    words: [u64; WORDS + 1],
    len: usize,
}

impl Default for BitBlock {
    fn default() -> Self {
        BitBlock {
            words: [0; WORDS + 1],
            len: 0,
        }
    }
}

impl BitBlock {
    #[inline]
    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Ones in the first `i` bits.
    #[inline]
    fn rank1(&self, i: usize) -> usize {
        let full = i / 64;
        let mut r: usize = self.words[..full]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum();
        let rem = i % 64;
        if rem > 0 {
            r += (self.words[full] & ((1u64 << rem) - 1)).count_ones() as usize;
        }
        r
    }

    fn insert(&mut self, i: usize, bit: bool) {
        let w = i / 64;
        let off = i % 64;
        let last = self.len / 64;
        for idx in (w + 1..=last).rev() {
            self.words[idx] = (self.words[idx] << 1) | (self.words[idx - 1] >> 63);
        }
        let low_mask = (1u64 << off) - 1;
        let word = self.words[w];
        self.words[w] = (word & low_mask) | ((word & !low_mask) << 1) | ((bit as u64) << off);
        self.len += 1;
    }

    /// Position of the `k`-th bit equal to `bit`, `k` counted from 1.
    fn select(&self, bit: bool, mut k: usize) -> usize {
        for (wi, &raw) in self.words.iter().enumerate() {
            let mut word = if bit { raw } else { !raw };
            let valid = self.len.saturating_sub(wi * 64).min(64);
            if valid < 64 {
                word &= (1u64 << valid) - 1;
            }
            let c = word.count_ones() as usize;
            if k <= c {
                for _ in 1..k {
                    word &= word - 1;
                }
                return wi * 64 + word.trailing_zeros() as usize;
            }
            k -= c;
        }
        unreachable!("select target lies inside the block")
    }
}

impl Block for BitBlock {
    type Summary = BitSummary;
    const CAPACITY: usize = BITS;

    fn len(&self) -> usize {
        self.len
    }

    fn summary(&self) -> BitSummary {
        BitSummary {
            len: self.len,
            ones: self.rank1(self.len),
        }
    }

    fn split_off_half(&mut self) -> Self {
        // split on a word boundary
        let keep_words = self.len / 128;
        let mut upper = BitBlock::default();
        let moved = self.len - keep_words * 64;
        for (dst, src) in (keep_words..=WORDS).enumerate() {
            upper.words[dst] = self.words[src];
            self.words[src] = 0;
        }
        upper.len = moved;
        self.len = keep_words * 64;
        upper
    }
}

#[derive(Clone, Debug, Default)]
pub struct DynBitVec {
    tree: Tree<BitBlock>,
}

impl DynBitVec {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.tree.total().len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn ones(&self) -> usize {
        self.tree.total().ones
    }

    #[inline]
    pub fn zeros(&self) -> usize {
        self.len() - self.ones()
    }

    pub fn access(&self, i: usize) -> Result<bool> {
        if i >= self.len() {
            return out_of_range("bit", i, self.len());
        }
        Ok(self
            .tree
            .query(|acc, ch| acc.len + ch.len > i, |b, acc| b.get(i - acc.len)))
    }

    /// Ones in `[0, i)`.
    pub fn rank1(&self, i: usize) -> Result<usize> {
        if i > self.len() {
            return out_of_range("bit", i, self.len());
        }
        if i == 0 {
            return Ok(0);
        }
        if i == self.len() {
            return Ok(self.ones());
        }
        Ok(self.tree.query(
            |acc, ch| acc.len + ch.len > i,
            |b, acc| acc.ones + b.rank1(i - acc.len),
        ))
    }

    /// Zeros in `[0, i)`.
    pub fn rank0(&self, i: usize) -> Result<usize> {
        Ok(i - self.rank1(i)?)
    }

    /// `(B[i], rank of B[i] in [0, i))` in one descent.
    pub fn access_rank(&self, i: usize) -> Result<(bool, usize)> {
        if i >= self.len() {
            return out_of_range("bit", i, self.len());
        }
        Ok(self.tree.query(
            |acc, ch| acc.len + ch.len > i,
            |b, acc| {
                let local = i - acc.len;
                let ones = acc.ones + b.rank1(local);
                if b.get(local) {
                    (true, ones)
                } else {
                    (false, i - ones)
                }
            },
        ))
    }

    /// Position of the `k`-th one (`k >= 1`).
    pub fn select1(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.ones() {
            return out_of_range("one", k, self.ones());
        }
        Ok(self.tree.query(
            |acc, ch| acc.ones + ch.ones >= k,
            |b, acc| acc.len + b.select(true, k - acc.ones),
        ))
    }

    /// Position of the `k`-th zero (`k >= 1`).
    pub fn select0(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.zeros() {
            return out_of_range("zero", k, self.zeros());
        }
        Ok(self.tree.query(
            |acc, ch| (acc.len - acc.ones) + (ch.len - ch.ones) >= k,
            |b, acc| acc.len + b.select(false, k - (acc.len - acc.ones)),
        ))
    }

    pub fn insert(&mut self, i: usize, bit: bool) -> Result<()> {
        self.insert_rank(i, bit).map(|_| ())
    }

    /// Inserts `bit` at `i` and returns how many bits equal to `bit` precede it.
    pub fn insert_rank(&mut self, i: usize, bit: bool) -> Result<usize> {
        if i > self.len() {
            return out_of_range("bit", i, self.len());
        }
        Ok(self.tree.modify(
            |acc, ch| acc.len + ch.len >= i,
            |b, acc| {
                let local = i - acc.len;
                let ones = acc.ones + b.rank1(local);
                b.insert(local, bit);
                if bit {
                    ones
                } else {
                    i - ones
                }
            },
        ))
    }

    pub fn to_bits(&self) -> Vec<bool> {
        self.tree
            .blocks()
            .into_iter()
            .flat_map(|b| (0..b.len).map(move |i| b.get(i)))
            .collect()
    }

    pub fn node_count(&self) -> usize {
        self.tree.node_count()
    }

    pub fn visits(&self) -> u64 {
        self.tree.visits()
    }

    pub fn audit(&self) -> crate::error::Result<()> {
        self.tree.audit()
    }
}
