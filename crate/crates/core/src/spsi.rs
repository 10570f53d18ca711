//! Searchable partial sums with indels.
//!
//! Maintains a sequence `s_1, ..., s_m` of nonnegative integers under prefix
//! sums, prefix-sum search, in-place updates and insertion of zeros. Element
//! indices are 1-based, matching the usual `s_1..s_m` notation; gap positions
//! for [`Spsi::insert`] are 0-based. There is no delete.

use crate::error::{out_of_range, Error, Result};
use crate::tree::{Block, Summary, Tree};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct PsSummary {
    pub count: usize,
    pub sum: u64,
}

impl Summary for PsSummary {
    #[inline]
    fn add(&mut self, other: &Self) {
        self.count += other.count;
        self.sum += other.sum;
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct PsBlock(Vec<u64>);

impl Block for PsBlock {
    type Summary = PsSummary;
    const CAPACITY: usize = 32;

    fn len(&self) -> usize {
        self.0.len()
    }

    fn summary(&self) -> PsSummary {
        PsSummary {
            count: self.0.len(),
            sum: self.0.iter().sum(),
        }
    }

    fn split_off_half(&mut self) -> Self {
        let mid = self.0.len() / 2;
        PsBlock(self.0.split_off(mid))
    }
}

/// Dynamic sequence of nonnegative integers with prefix sums.
#[derive(Clone, Debug, Default)]
pub struct Spsi {
    tree: Tree<PsBlock>,
}

impl Spsi {
    pub fn new() -> Self {
        Self::default()
    }

    /// A sequence of `m` zeros.
    pub fn with_zeros(m: usize) -> Self {
        let mut ps = Spsi::new();
        for _ in 0..m {
            ps.insert(ps.len()).expect("appending is always in range");
        }
        ps
    }

    /// Number of elements `m`.
    #[inline]
    pub fn len(&self) -> usize {
        self.tree.total().count
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sum `M` of all elements.
    #[inline]
    pub fn total(&self) -> u64 {
        self.tree.total().sum
    }

    /// `s_1 + ... + s_i`; `sum(0)` is 0.
    pub fn sum(&self, i: usize) -> Result<u64> {
        if i > self.len() {
            return out_of_range("element", i, self.len());
        }
        if i == 0 {
            return Ok(0);
        }
        Ok(self.tree.query(
            |acc, ch| acc.count + ch.count >= i,
            |block, acc| acc.sum + block.0[..i - acc.count].iter().sum::<u64>(),
        ))
    }

    /// The element `s_i`.
    pub fn get(&self, i: usize) -> Result<u64> {
        if i == 0 || i > self.len() {
            return out_of_range("element", i, self.len());
        }
        Ok(self.tree.query(
            |acc, ch| acc.count + ch.count >= i,
            |block, acc| block.0[i - 1 - acc.count],
        ))
    }

    /// Smallest `i` with `sum(i) >= x`, for `1 <= x <= M`.
    pub fn search(&self, x: u64) -> Result<usize> {
        self.search_with_prefix(x).map(|(i, _)| i)
    }

    /// [`Spsi::search`] that also reports `sum(i - 1)` from the same descent.
    pub fn search_with_prefix(&self, x: u64) -> Result<(usize, u64)> {
        if x == 0 || x > self.total() {
            return out_of_range("prefix-sum target", x as usize, self.total() as usize);
        }
        Ok(self.tree.query(
            |acc, ch| acc.sum + ch.sum >= x,
            |block, acc| {
                let mut sum = acc.sum;
                for (off, &v) in block.0.iter().enumerate() {
                    if sum + v >= x {
                        return (acc.count + off + 1, sum);
                    }
                    sum += v;
                }
                unreachable!("target {x} lies inside the chosen leaf")
            },
        ))
    }

    /// `s_i += delta`. Fails without modifying anything if the result would be
    /// negative.
    pub fn update(&mut self, i: usize, delta: i64) -> Result<()> {
        if i == 0 || i > self.len() {
            return out_of_range("element", i, self.len());
        }
        self.tree.modify(
            |acc, ch| acc.count + ch.count >= i,
            |block, acc| {
                let slot = &mut block.0[i - 1 - acc.count];
                match slot.checked_add_signed(delta) {
                    Some(v) => {
                        *slot = v;
                        Ok(())
                    }
                    None => Err(Error::Contract(format!(
                        "update({i}, {delta}) on value {} leaves the range of nonnegative words",
                        *slot
                    ))),
                }
            },
        )
    }

    /// Inserts a zero at gap `i` so it becomes element `i + 1`.
    pub fn insert(&mut self, i: usize) -> Result<()> {
        if i > self.len() {
            return out_of_range("gap", i, self.len());
        }
        self.tree.modify(
            |acc, ch| acc.count + ch.count >= i,
            |block, acc| block.0.insert(i - acc.count, 0),
        );
        Ok(())
    }

    /// Elements in order.
    pub fn to_vec(&self) -> Vec<u64> {
        self.tree
            .blocks()
            .into_iter()
            .flat_map(|b| b.0.iter().copied())
            .collect()
    }

    /// Edges from the root to the leaves.
    pub fn height(&self) -> usize {
        self.tree.height()
    }

    pub fn node_count(&self) -> usize {
        self.tree.node_count()
    }

    pub fn visits(&self) -> u64 {
        self.tree.visits()
    }

    /// Recomputes every subtree count and partial sum from the leaves.
    pub fn audit(&self) -> Result<()> {
        self.tree.audit()
    }
}
