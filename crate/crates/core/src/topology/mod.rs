//! The four tree topologies behind the index: the suffix tree of `T#` and the
//! one-character-per-edge trie over left-maximal substrings (the reverse
//! suffix-link tree), in both text directions, with maximal-repeat marks and
//! the rank/select commuting between paired topologies.

mod build;

pub use build::{explicit_suffix_tree, lcp_array, ExplicitSt, StNode};

use crate::succinct::{BpTree, NodeId};
use crate::textcore::{Interval, SuffixStructures, Text};
use crate::{Error, Result};

/// Suffix-tree shape over one direction. The i-th leaf in preorder is row i of
/// the corresponding suffix array; marks flag maximal repeats.
#[derive(Debug, Clone)]
pub struct StTopology {
    pub shape: BpTree,
    /// Row of the suffix one position to the right of leaf-rank i's suffix
    /// (`isa[sa[i]+1]`); 0 for the terminator row.
    next_leaf_row: Vec<u32>,
}

impl StTopology {
    /// Deepest node whose label has the represented string as a prefix: the
    /// lca of the interval's boundary leaves.
    pub fn locus(&self, iv: Interval) -> Result<NodeId> {
        if iv.lo < 1 || iv.hi() > self.shape.leaf_count() || iv.lo > iv.hi {
            return Err(Error::CorruptDescriptor("interval out of bounds"));
        }
        let a = self.shape.select_leaf(iv.lo())?;
        if iv.lo == iv.hi {
            return Ok(a);
        }
        let b = self.shape.select_leaf(iv.hi())?;
        Ok(self.shape.lca(a, b))
    }

    /// Leaf interval of `v` as BWT rows.
    pub fn node_interval(&self, v: NodeId) -> Interval {
        Interval::new(self.shape.leftmost_leaf(v), self.shape.rightmost_leaf(v))
    }

    /// Node labeled `ℓ(v)[2..]`, via the shifted-leaf lca trick. Defined for
    /// every node but the root.
    pub fn suffix_link(&self, v: NodeId) -> Result<NodeId> {
        if v == 1 {
            return Err(Error::Root("suffix link"));
        }
        let l = self.next_leaf_row[self.shape.leftmost_leaf(v) - 1];
        let r = self.next_leaf_row[self.shape.rightmost_leaf(v) - 1];
        if l == 0 || r == 0 {
            return Err(Error::Root("suffix link"));
        }
        let a = self.shape.select_leaf(l as usize)?;
        let b = self.shape.select_leaf(r as usize)?;
        Ok(self.shape.lca(a, b))
    }
}

/// Trie over the left-maximal substrings of one direction, one character per
/// edge, so a node's depth equals its label length. Marks flag maximal repeats.
#[derive(Debug, Clone)]
pub struct SltTopology {
    pub shape: BpTree,
}

/// A suffix-tree topology and the suffix-link trie whose marked nodes pair
/// with it one-to-one in preorder.
#[derive(Debug, Clone)]
pub struct DirectedTopology {
    pub st: StTopology,
    pub slt: SltTopology,
}

impl DirectedTopology {
    /// Marked st node -> paired slt node.
    pub fn st_to_slt(&self, v: NodeId) -> Result<NodeId> {
        let i = self.st.shape.marked_rank(v)?;
        self.slt.shape.select_marked(i)
    }

    /// Marked slt node -> paired st node.
    pub fn slt_to_st(&self, v: NodeId) -> Result<NodeId> {
        let i = self.slt.shape.marked_rank(v)?;
        self.st.shape.select_marked(i)
    }

    /// `|ℓ(v)|` for a marked st node: commute to the trie and read the depth.
    pub fn max_rep_length(&self, v: NodeId) -> Result<usize> {
        Ok(self.slt.shape.depth(self.st_to_slt(v)?))
    }

    /// Shallowest marked ancestor-or-self of marked node `z` whose label length
    /// is at least `min_len`. Every ancestor of a marked node is marked, so
    /// label length is monotone along the path and binary search applies.
    pub fn shallowest_marked_at_least(&self, z: NodeId, min_len: usize) -> Result<NodeId> {
        debug_assert!(self.st.shape.is_marked(z));
        let dz = self.st.shape.depth(z);
        let mut lo = 0usize; // deepest tree depth known to be too short
        let mut hi = dz; // known to satisfy min_len
        debug_assert!(self.max_rep_length(z)? >= min_len);
        if min_len == 0 {
            return self.st.shape.level_ancestor(z, 0);
        }
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            let cand = self.st.shape.level_ancestor(z, mid)?;
            if self.max_rep_length(cand)? >= min_len {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        self.st.shape.level_ancestor(z, hi)
    }
}

/// Both directions: `fwd` pairs the suffix tree of `T#` with the trie over
/// left-maximal substrings of `T`; `bwd` is the mirror for `reverse(T)#`.
#[derive(Debug, Clone)]
pub struct TopologyPair {
    pub fwd: DirectedTopology,
    pub bwd: DirectedTopology,
}

impl TopologyPair {
    pub fn build(text: &Text, ss: &SuffixStructures) -> Self {
        build::build_pair(text, ss)
    }

    /// Rebuilds derived state from serialized parentheses and marks.
    pub fn from_serialized(
        ss: &SuffixStructures,
        fwd_st: (BpTree, crate::succinct::BitVec),
        fwd_slt: (BpTree, crate::succinct::BitVec),
        bwd_st: (BpTree, crate::succinct::BitVec),
        bwd_slt: (BpTree, crate::succinct::BitVec),
    ) -> Result<Self> {
        let make_st = |(mut shape, marks): (BpTree, crate::succinct::BitVec),
                       sa: &[u32],
                       isa: &[u32]|
         -> Result<StTopology> {
            shape.attach_marks(marks)?;
            Ok(StTopology { shape, next_leaf_row: build::next_leaf_rows(sa, isa) })
        };
        let make_slt =
            |(mut shape, marks): (BpTree, crate::succinct::BitVec)| -> Result<SltTopology> {
                shape.attach_marks(marks)?;
                Ok(SltTopology { shape })
            };
        Ok(TopologyPair {
            fwd: DirectedTopology {
                st: make_st(fwd_st, &ss.sa, &ss.isa)?,
                slt: make_slt(fwd_slt)?,
            },
            bwd: DirectedTopology {
                st: make_st(bwd_st, &ss.rev_sa, &ss.rev_isa)?,
                slt: make_slt(bwd_slt)?,
            },
        })
    }
}

#[cfg(test)]
mod tests;
