//! Height-balanced counted tree shared by every dynamic structure in the crate.
//!
//! Elements live in fixed-capacity leaf blocks. Each internal node keeps, for
//! every child, a summary of the child's subtree (element count plus whatever
//! partial sums the block type aggregates). Queries descend from the root by
//! comparing accumulated summaries; updates fix the summaries on the descent
//! path and split overflowing nodes on the way back up. Nothing is ever
//! deleted, so nodes are never merged and the arena only grows.
//!
//! All leaves sit at the same depth. A node splits into two halves when it
//! overflows, which keeps every non-root node at least half full and bounds
//! the height by `log_{F/2}(m)` for fanout `F`.

use std::cell::Cell;
use std::fmt::Debug;

use arrayvec::ArrayVec;

use crate::error::{Error, Result};

/// Maximum number of children per internal node.
const FANOUT: usize = 16;

/// Deep enough for any sequence addressable by `usize` with half-full nodes.
const MAX_DEPTH: usize = 48;

pub(crate) trait Summary: Copy + Default + Debug + PartialEq {
    fn add(&mut self, other: &Self);
}

pub(crate) trait Block: Clone + Debug + Default {
    type Summary: Summary;

    /// Number of elements a leaf holds before it has to split.
    const CAPACITY: usize;

    fn len(&self) -> usize;
    fn summary(&self) -> Self::Summary;
    /// Moves the upper part of the block into a new block.
    fn split_off_half(&mut self) -> Self;
}

type NodeId = u32;

#[derive(Clone, Debug)]
enum Node<B: Block> {
    Inner {
        children: Vec<NodeId>,
        sums: Vec<B::Summary>,
    },
    Leaf(B),
}

type Path = ArrayVec<(NodeId, usize), MAX_DEPTH>;

#[derive(Clone, Debug)]
pub(crate) struct Tree<B: Block> {
    nodes: Vec<Node<B>>,
    root: NodeId,
    /// Edges from the root to any leaf.
    height: usize,
    total: B::Summary,
    visits: Cell<u64>,
}

impl<B: Block> Default for Tree<B> {
    fn default() -> Self {
        Self::new()
    }
}

impl<B: Block> Tree<B> {
    pub fn new() -> Self {
        Tree {
            nodes: vec![Node::Leaf(B::default())],
            root: 0,
            height: 0,
            total: B::Summary::default(),
            visits: Cell::new(0),
        }
    }

    #[inline]
    pub fn total(&self) -> B::Summary {
        self.total
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes touched by descents since construction.
    pub fn visits(&self) -> u64 {
        self.visits.get()
    }

    /// Walks from the root to a leaf. At every internal node the first child
    /// for which `enter(acc, child)` holds is chosen, where `acc` summarizes
    /// everything left of that child; the last child is taken if none match.
    fn descend<F>(&self, mut enter: F) -> (Path, NodeId, B::Summary)
    where
        F: FnMut(&B::Summary, &B::Summary) -> bool,
    {
        let mut path = Path::new();
        let mut acc = B::Summary::default();
        let mut id = self.root;
        loop {
            match &self.nodes[id as usize] {
                Node::Leaf(_) => break,
                Node::Inner { children, sums } => {
                    let last = children.len() - 1;
                    let mut pick = last;
                    for (i, s) in sums[..last].iter().enumerate() {
                        if enter(&acc, s) {
                            pick = i;
                            break;
                        }
                        acc.add(s);
                    }
                    path.push((id, pick));
                    id = children[pick];
                }
            }
        }
        self.visits.set(self.visits.get() + path.len() as u64 + 1);
        (path, id, acc)
    }

    pub fn query<F, R>(&self, enter: F, at_leaf: impl FnOnce(&B, B::Summary) -> R) -> R
    where
        F: FnMut(&B::Summary, &B::Summary) -> bool,
    {
        let (_, leaf, acc) = self.descend(enter);
        match &self.nodes[leaf as usize] {
            Node::Leaf(block) => at_leaf(block, acc),
            Node::Inner { .. } => unreachable!("descent ends at a leaf"),
        }
    }

    /// Like [`Tree::query`] but lets the closure mutate the leaf. Summaries on
    /// the path are refreshed and overflowing nodes split afterwards, even if
    /// the closure returns an error, so it must leave the block consistent.
    pub fn modify<F, R>(&mut self, enter: F, at_leaf: impl FnOnce(&mut B, B::Summary) -> R) -> R
    where
        F: FnMut(&B::Summary, &B::Summary) -> bool,
    {
        let (path, leaf, acc) = self.descend(enter);
        let out = match &mut self.nodes[leaf as usize] {
            Node::Leaf(block) => at_leaf(block, acc),
            Node::Inner { .. } => unreachable!("descent ends at a leaf"),
        };
        self.repair(&path, leaf);
        out
    }

    fn summary_of(&self, id: NodeId) -> B::Summary {
        match &self.nodes[id as usize] {
            Node::Leaf(block) => block.summary(),
            Node::Inner { sums, .. } => fold(sums),
        }
    }

    fn split_if_full(&mut self, id: NodeId) -> Option<NodeId> {
        let sibling = match &mut self.nodes[id as usize] {
            Node::Leaf(block) if block.len() > B::CAPACITY => Node::Leaf(block.split_off_half()),
            Node::Inner { children, sums } if children.len() > FANOUT => {
                let mid = children.len() / 2;
                Node::Inner {
                    children: children.split_off(mid),
                    sums: sums.split_off(mid),
                }
            }
            _ => return None,
        };
        self.nodes.push(sibling);
        Some((self.nodes.len() - 1) as NodeId)
    }

    fn repair(&mut self, path: &Path, leaf: NodeId) {
        let mut child = leaf;
        let mut sibling = self.split_if_full(leaf);
        for &(id, idx) in path.iter().rev() {
            let child_sum = self.summary_of(child);
            let sibling_sum = sibling.map(|s| self.summary_of(s));
            if let Node::Inner { children, sums } = &mut self.nodes[id as usize] {
                sums[idx] = child_sum;
                if let (Some(s), Some(ss)) = (sibling, sibling_sum) {
                    children.insert(idx + 1, s);
                    sums.insert(idx + 1, ss);
                }
            }
            sibling = self.split_if_full(id);
            child = id;
        }
        if let Some(s) = sibling {
            let children = vec![self.root, s];
            let sums = vec![self.summary_of(self.root), self.summary_of(s)];
            self.nodes.push(Node::Inner { children, sums });
            self.root = (self.nodes.len() - 1) as NodeId;
            self.height += 1;
        }
        self.total = self.summary_of(self.root);
    }

    /// Leaf blocks in sequence order.
    pub fn blocks(&self) -> Vec<&B> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            match &self.nodes[id as usize] {
                Node::Leaf(block) => out.push(block),
                Node::Inner { children, .. } => stack.extend(children.iter().rev()),
            }
        }
        out
    }

    /// Recomputes every stored summary from the leaves and checks it against
    /// the stored value, along with node occupancy and uniform leaf depth.
    pub fn audit(&self) -> Result<()> {
        let total = self.audit_node(self.root, 0, true)?;
        if total != self.total {
            return Err(Error::Corrupt(format!(
                "cached total {:?} != recomputed {:?}",
                self.total, total
            )));
        }
        Ok(())
    }

    fn audit_node(&self, id: NodeId, depth: usize, is_root: bool) -> Result<B::Summary> {
        match &self.nodes[id as usize] {
            Node::Leaf(block) => {
                if depth != self.height {
                    return Err(Error::Corrupt(format!(
                        "leaf at depth {depth}, tree height {}",
                        self.height
                    )));
                }
                if block.len() > B::CAPACITY || (!is_root && block.len() == 0) {
                    return Err(Error::Corrupt(format!(
                        "leaf holds {} elements",
                        block.len()
                    )));
                }
                Ok(block.summary())
            }
            Node::Inner { children, sums } => {
                if children.len() != sums.len() || children.is_empty() || children.len() > FANOUT {
                    return Err(Error::Corrupt(format!(
                        "inner node with {} children",
                        children.len()
                    )));
                }
                if !is_root && children.len() < FANOUT / 2 {
                    return Err(Error::Corrupt("underfull inner node".into()));
                }
                let mut acc = B::Summary::default();
                for (&c, stored) in children.iter().zip(sums) {
                    let actual = self.audit_node(c, depth + 1, false)?;
                    if actual != *stored {
                        return Err(Error::Corrupt(format!(
                            "stored subtree summary {stored:?} != recomputed {actual:?}"
                        )));
                    }
                    acc.add(&actual);
                }
                Ok(acc)
            }
        }
    }
}

fn fold<S: Summary>(sums: &[S]) -> S {
    let mut acc = S::default();
    for s in sums {
        acc.add(s);
    }
    acc
}
