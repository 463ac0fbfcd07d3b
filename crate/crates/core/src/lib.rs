//! Bidirectional Burrows-Wheeler index with constant-direction extension *and*
//! contraction on arbitrary substrings, a CDAWG-backed equivalent engine, and an
//! infinite-order, frequency-aware, bidirectional de Bruijn graph on top.
//!
//! The crate is organized bottom-up:
//!
//! - [`succinct`]: rank/select bitvectors, character-rank sequences, and
//!   balanced-parentheses ordinal trees with navigation and level-ancestor queries.
//! - [`textcore`]: text representation, suffix-array/BWT construction for the text
//!   and its reverse, and the brute-force oracles everything else is tested against.
//! - [`topology`]: the four tree topologies (suffix tree and suffix-link trie for
//!   both directions), maximal-repeat marks, and the commuting maps between them.
//! - [`biindex`]: the bidirectional index itself, including the contraction
//!   algorithm for substrings that are not right-maximal.
//! - [`ms`]: matching statistics with eager and lazy strategies.
//! - [`dbg`](mod@dbg): the de Bruijn graph view with unit, frequency-based and
//!   maximal-repeat order changes.
//! - [`cdawg`]: CDAWG construction, run-length BWTs, the CDAWG-based suffix-tree
//!   representation with affix links, and the second bidirectional engine.
//! - [`engine`]: a trait unifying the two engines so the upper layers run on either.
//!
//! ```
//! use bbwx::{BwtIndex, Side, Text};
//! use bbwx::textcore::InputFormat;
//!
//! let idx = BwtIndex::build(Text::build(b"banana", InputFormat::Raw).unwrap());
//! let a = idx.text().symbol_of_byte(b'a').unwrap();
//! let n = idx.text().symbol_of_byte(b'n').unwrap();
//!
//! // grow "ana" outward, then strip the leading character again
//! let d = idx.find(&[a, n, a]).unwrap();
//! assert_eq!(idx.freq(&d), 2);
//! let nana = idx.extend(&d, Side::Left, n).unwrap();
//! assert_eq!(idx.contract(&nana, Side::Left).unwrap(), d);
//!
//! // contraction works from either end of any substring
//! let an = idx.contract(&d, Side::Right).unwrap();
//! assert_eq!(idx.freq(&an), 2);
//! assert_eq!(idx.enumerate(&an, Side::Right), vec![a]);
//! ```

pub mod biindex;
pub mod cdawg;
pub mod dbg;
pub mod engine;
mod error;
pub mod ms;
pub mod succinct;
pub mod textcore;
pub mod topology;

pub use biindex::{BwtIndex, Descriptor, Side};
pub use error::{Error, Result};
pub use textcore::{Interval, Text};
