//! A common surface over the two bidirectional engines (plain BWT with tree
//! topologies, and the CDAWG-based representation), so matching statistics and
//! the de Bruijn graph layer run unchanged on either.

use crate::biindex::{BwtIndex, Descriptor, Side};
use crate::{Error, Result};

/// Bidirectional engine: extension, contraction, enumeration, and order jumps
/// over some internal state representing a substring of the indexed text.
pub trait BidiEngine {
    type State: Clone;

    fn empty(&self) -> Self::State;

    /// Canonical `(forward interval, reverse interval, length)` view; equal
    /// states of different engines must produce the same view.
    fn view(&self, s: &Self::State) -> Descriptor;

    fn extend(&self, s: &Self::State, side: Side, c: u8) -> Result<Self::State>;
    fn contract(&self, s: &Self::State, side: Side) -> Result<Self::State>;

    /// Distinct extension symbols on `side`, ascending, terminator included.
    fn enumerate(&self, s: &Self::State, side: Side) -> Vec<u8>;

    fn is_maximal(&self, s: &Self::State, side: Side) -> bool {
        self.enumerate(s, side).len() > 1
    }

    fn freq(&self, s: &Self::State) -> usize {
        self.view(s).freq()
    }

    /// Jump to the longest extension on `side` with the same frequency: keep
    /// appending while exactly one non-terminator symbol continues the string.
    /// Returns the new state and order; a no-op when already maximal on `side`.
    fn inc_freq(&self, s: &Self::State, side: Side) -> Result<(Self::State, usize)> {
        let mut cur = s.clone();
        loop {
            let exts = self.enumerate(&cur, side);
            if exts.len() != 1 || exts[0] == 0 {
                let k = self.view(&cur).len();
                return Ok((cur, k));
            }
            cur = self.extend(&cur, side, exts[0])?;
        }
    }

    /// Jump to the longest prefix (dropping from `side`) whose frequency
    /// differs: contract until the width strictly grows.
    fn dec_freq(&self, s: &Self::State, side: Side) -> Result<(Self::State, usize)> {
        let d = self.view(s);
        if d.len == 0 {
            return Err(Error::Empty);
        }
        let f0 = d.freq();
        let mut cur = s.clone();
        loop {
            let next = self.contract(&cur, side)?;
            let nd = self.view(&next);
            if nd.freq() > f0 {
                return Ok((next, nd.len()));
            }
            cur = next;
        }
    }

    /// Jump to the shortest both-maximal superstring with the same frequency:
    /// force-extend right, then left, along the unique continuations. Errors
    /// with `NotFound` on unique strings, which no maximal repeat contains.
    fn inc_to_max_rep(&self, s: &Self::State) -> Result<(Self::State, usize)> {
        if self.freq(s) < 2 {
            return Err(Error::NotFound);
        }
        let mut cur = s.clone();
        for side in [Side::Right, Side::Left] {
            loop {
                let exts = self.enumerate(&cur, side);
                if exts.len() != 1 {
                    break;
                }
                debug_assert_ne!(exts[0], 0, "repeated strings never force the terminator");
                cur = self.extend(&cur, side, exts[0])?;
            }
        }
        let k = self.view(&cur).len();
        Ok((cur, k))
    }

    /// Jump to the longest proper maximal-repeat suffix (dropping from the
    /// left) or prefix (dropping from the right): contract once, then until
    /// both-maximal. Lands on the empty string with order 0 when no nonempty
    /// maximal repeat remains.
    fn dec_to_max_rep(&self, s: &Self::State, side: Side) -> Result<(Self::State, usize)> {
        let mut cur = self.contract(s, side)?;
        loop {
            let d = self.view(&cur);
            if d.len == 0 {
                return Ok((cur, 0));
            }
            if self.is_maximal(&cur, Side::Left) && self.is_maximal(&cur, Side::Right) {
                return Ok((cur, d.len()));
            }
            cur = self.contract(&cur, side)?;
        }
    }
}

/// The plain-BWT engine: descriptors over [`BwtIndex`].
pub struct BwtEngine<'a> {
    idx: &'a BwtIndex,
}

impl<'a> BwtEngine<'a> {
    pub fn new(idx: &'a BwtIndex) -> Self {
        BwtEngine { idx }
    }

    pub fn index(&self) -> &'a BwtIndex {
        self.idx
    }
}

impl BidiEngine for BwtEngine<'_> {
    type State = Descriptor;

    fn empty(&self) -> Descriptor {
        self.idx.empty_descriptor()
    }

    fn view(&self, s: &Descriptor) -> Descriptor {
        *s
    }

    fn extend(&self, s: &Descriptor, side: Side, c: u8) -> Result<Descriptor> {
        self.idx.extend(s, side, c)
    }

    fn contract(&self, s: &Descriptor, side: Side) -> Result<Descriptor> {
        self.idx.contract(s, side)
    }

    fn enumerate(&self, s: &Descriptor, side: Side) -> Vec<u8> {
        self.idx.enumerate(s, side)
    }

    fn is_maximal(&self, s: &Descriptor, side: Side) -> bool {
        self.idx.is_maximal(s, side)
    }

    fn freq(&self, s: &Descriptor) -> usize {
        self.idx.freq(s)
    }
}
