//! Bit-level primitives: rank/select bitvectors, a character-rank structure over
//! BWT strings, and balanced-parentheses ordinal trees.
//!
//! Positions, ranks and node identifiers are 1-based throughout, matching the
//! row numbering of the suffix structures built on top.

mod bitvec;
mod bptree;
mod charseq;

pub use bitvec::BitVec;
pub use bptree::{BpTree, NodeId};
pub use charseq::CharSeq;
