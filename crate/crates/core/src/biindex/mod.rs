//! The fully-functional bidirectional index: synchronized extension,
//! enumeration, maximality tests, and contraction of arbitrary substrings.

use crate::succinct::{CharSeq, NodeId};
use crate::textcore::{Interval, SuffixStructures, Text};
use crate::topology::{DirectedTopology, StTopology, TopologyPair};
use crate::{Error, Result};

/// Which end of the represented string an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Constant-space descriptor of a substring: its interval in the BWT of `T`,
/// the interval of the reversed string in the BWT of `reverse(T)`, and its
/// length. Both intervals always have the same width, the string's frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Descriptor {
    pub fwd: Interval,
    pub rev: Interval,
    pub len: u32,
}

impl Descriptor {
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn freq(&self) -> usize {
        self.fwd.width()
    }
}

/// How a contraction found the new locus; used by tests to pin the algorithm's
/// branch structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractPath {
    /// Length-1 input short-circuits to the empty descriptor.
    Empty,
    /// The input was right-maximal (left-maximal for right contraction):
    /// plain suffix link.
    SuffixLink,
    /// The suffix-link images of the locus edge form an edge: the locus is
    /// the suffix link of the old locus.
    Edge,
    /// The contracted string is longer than the marked parent: same locus as
    /// the edge case, reached through the path branch.
    PathBeyondMarked,
    /// Jumped through the marked machinery (trie level ancestor, then the
    /// shallowest marked ancestor at sufficient depth).
    PathMarked,
    /// Practical variant: lowest marked ancestor too shallow, locus is the
    /// suffix-link image itself.
    PracticalDirect,
    /// Practical variant: resolved through the marked machinery.
    PracticalMarked,
}

/// Strategy flag for [`BwtIndex::contract_traced`]; both must agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ContractStrategy {
    /// Parent/suffix-link edge test first.
    #[default]
    EdgeTest,
    /// Lowest-marked-ancestor test on the suffix-link image.
    MarkedAncestor,
}

/// Bidirectional BWT index over a text, with the tree topologies needed for
/// contraction.
pub struct BwtIndex {
    text: Text,
    ss: SuffixStructures,
    topo: TopologyPair,
}

impl BwtIndex {
    pub fn build(text: Text) -> Self {
        let ss = SuffixStructures::build(&text);
        let topo = TopologyPair::build(&text, &ss);
        BwtIndex { text, ss, topo }
    }

    pub fn from_parts(text: Text, ss: SuffixStructures, topo: TopologyPair) -> Self {
        BwtIndex { text, ss, topo }
    }

    pub fn n(&self) -> usize {
        self.ss.n()
    }

    pub fn text(&self) -> &Text {
        &self.text
    }

    pub fn structures(&self) -> &SuffixStructures {
        &self.ss
    }

    pub fn topologies(&self) -> &TopologyPair {
        &self.topo
    }

    /// Descriptor of the empty string: all rows on both sides.
    pub fn empty_descriptor(&self) -> Descriptor {
        let n = self.n();
        Descriptor { fwd: Interval::new(1, n), rev: Interval::new(1, n), len: 0 }
    }

    /// Descriptor of `w`, or `NotFound`; `w` is over symbols `[1..sigma]`.
    pub fn find(&self, w: &[u8]) -> Result<Descriptor> {
        let mut d = self.empty_descriptor();
        for &c in w {
            d = self.extend(&d, Side::Right, c)?;
        }
        Ok(d)
    }

    /// Adds `c` on `side`; the descriptor is unchanged on error.
    pub fn extend(&self, d: &Descriptor, side: Side, c: u8) -> Result<Descriptor> {
        if c == 0 || c > self.text.sigma() {
            return Err(Error::InvalidSymbol(c as u16));
        }
        let (main_seq, main_iv, other_iv) = match side {
            Side::Left => (&self.ss.bwt, d.fwd, d.rev),
            Side::Right => (&self.ss.rev_bwt, d.rev, d.fwd),
        };
        let new_main = backward_step(main_seq, c, main_iv).ok_or(Error::NotFound)?;
        let smaller = main_seq.count_smaller_in_range(c, main_iv.lo(), main_iv.hi());
        let new_other =
            Interval::new(other_iv.lo() + smaller, other_iv.lo() + smaller + new_main.width() - 1);
        let out = match side {
            Side::Left => Descriptor { fwd: new_main, rev: new_other, len: d.len + 1 },
            Side::Right => Descriptor { fwd: new_other, rev: new_main, len: d.len + 1 },
        };
        debug_assert_eq!(out.fwd.width(), out.rev.width());
        Ok(out)
    }

    /// Distinct symbols extending the string on `side`, ascending; the
    /// terminator (symbol 0) is included when present.
    pub fn enumerate(&self, d: &Descriptor, side: Side) -> Vec<u8> {
        match side {
            Side::Left => self.ss.bwt.distinct_in_range(d.fwd.lo(), d.fwd.hi()),
            Side::Right => self.ss.rev_bwt.distinct_in_range(d.rev.lo(), d.rev.hi()),
        }
    }

    /// True iff more than one distinct symbol extends the string on `side`.
    pub fn is_maximal(&self, d: &Descriptor, side: Side) -> bool {
        match side {
            Side::Left => !self.ss.bwt.range_is_uniform(d.fwd.lo(), d.fwd.hi()),
            Side::Right => !self.ss.rev_bwt.range_is_uniform(d.rev.lo(), d.rev.hi()),
        }
    }

    pub fn freq(&self, d: &Descriptor) -> usize {
        d.fwd.width()
    }

    /// Removes one character from `side`.
    pub fn contract(&self, d: &Descriptor, side: Side) -> Result<Descriptor> {
        self.contract_traced(d, side, ContractStrategy::default()).map(|(d, _)| d)
    }

    /// Contraction with an explicit strategy, reporting the branch taken.
    pub fn contract_traced(
        &self,
        d: &Descriptor,
        side: Side,
        strategy: ContractStrategy,
    ) -> Result<(Descriptor, ContractPath)> {
        if d.len == 0 {
            return Err(Error::Empty);
        }
        if d.len == 1 {
            return Ok((self.empty_descriptor(), ContractPath::Empty));
        }
        // Orient so "main" is the side whose suffix tree sees the removal at
        // the front of the string: the forward tree for left contraction, the
        // backward tree for right contraction.
        let (main_topo, sec_st, main_iv, sec_iv, maximal) = match side {
            Side::Left => {
                (&self.topo.fwd, &self.topo.bwd.st, d.fwd, d.rev, self.is_maximal(d, Side::Right))
            }
            Side::Right => {
                (&self.topo.bwd, &self.topo.fwd.st, d.rev, d.fwd, self.is_maximal(d, Side::Left))
            }
        };
        let target_len = d.len() - 1;
        let (new_main, path) =
            contract_main(main_topo, main_iv, d.len(), target_len, maximal, strategy)?;
        let new_sec = contract_secondary(sec_st, sec_iv, new_main.width())?;
        let out = match side {
            Side::Left => Descriptor { fwd: new_main, rev: new_sec, len: target_len as u32 },
            Side::Right => Descriptor { fwd: new_sec, rev: new_main, len: target_len as u32 },
        };
        Ok((out, path))
    }

    /// Deep consistency check: recomputes the descriptor of the represented
    /// string and compares. O(len) — meant for API boundaries, not hot loops.
    pub fn validate(&self, d: &Descriptor) -> Result<()> {
        let n = self.n();
        let full = Interval::new(1, n);
        if d.len == 0 {
            if d.fwd == full && d.rev == full {
                return Ok(());
            }
            return Err(Error::CorruptDescriptor("empty descriptor must span all rows"));
        }
        if d.fwd.lo < 1 || d.fwd.hi() > n || d.fwd.lo > d.fwd.hi {
            return Err(Error::CorruptDescriptor("forward interval out of bounds"));
        }
        if d.fwd.width() != d.rev.width() {
            return Err(Error::CorruptDescriptor("interval widths differ"));
        }
        let start = self.ss.sa[d.fwd.lo() - 1] as usize;
        if start + d.len() - 1 > n - 1 {
            return Err(Error::CorruptDescriptor("length overruns the text"));
        }
        let w = &self.text.symbols()[start - 1..start - 1 + d.len()];
        if w.contains(&0) {
            return Err(Error::CorruptDescriptor("string crosses the terminator"));
        }
        match self.find(w) {
            Ok(expect) if expect == *d => Ok(()),
            _ => Err(Error::CorruptDescriptor("descriptor does not match its string")),
        }
    }

    /// Symbols of the represented string, read from the text.
    pub fn read_string(&self, d: &Descriptor) -> Vec<u8> {
        let start = self.ss.sa[d.fwd.lo() - 1] as usize;
        self.text.symbols()[start - 1..start - 1 + d.len()].to_vec()
    }
}

fn backward_step(seq: &CharSeq, c: u8, iv: Interval) -> Option<Interval> {
    let base = seq.partial_count(c);
    let lo = base + seq.rank(c, iv.lo() - 1).ok()? + 1;
    let hi = base + seq.rank(c, iv.hi()).ok()?;
    if lo <= hi {
        Some(Interval::new(lo, hi))
    } else {
        None
    }
}

/// New main-side interval for a contraction, per the suffix-link / level
/// ancestor algorithm. `len` is the current length, `target_len = len - 1`.
fn contract_main(
    topo: &DirectedTopology,
    iv: Interval,
    len: usize,
    target_len: usize,
    maximal: bool,
    strategy: ContractStrategy,
) -> Result<(Interval, ContractPath)> {
    let st = &topo.st;
    let v = st.locus(iv)?;
    if v == 1 {
        return Err(Error::CorruptDescriptor("nonempty string at the root"));
    }
    if maximal {
        // the string is the locus label; its suffix link is the new locus
        let target = st.suffix_link(v)?;
        return Ok((st.node_interval(target), ContractPath::SuffixLink));
    }
    let vp = st.suffix_link(v)?;
    debug_assert!(len >= 2);
    match strategy {
        ContractStrategy::EdgeTest => {
            let u = st.shape.parent(v)?;
            let up = if u == 1 { 1 } else { st.suffix_link(u)? };
            let z = st.shape.parent(vp)?;
            if z == up {
                return Ok((st.node_interval(vp), ContractPath::Edge));
            }
            // an implicit Weiner link lands inside the old edge, so z is a
            // maximal repeat
            assert!(st.shape.is_marked(z), "parent of the suffix-link image must be marked");
            let z_len = topo.max_rep_length(z)?;
            if target_len > z_len {
                return Ok((st.node_interval(vp), ContractPath::PathBeyondMarked));
            }
            let y = resolve_locus_via_marks(topo, z, target_len)?;
            Ok((st.node_interval(y), ContractPath::PathMarked))
        }
        ContractStrategy::MarkedAncestor => {
            let anchor = match st.shape.lowest_marked_ancestor(vp) {
                Ok(a) => a,
                Err(Error::NotFound) => {
                    return Ok((st.node_interval(vp), ContractPath::PracticalDirect))
                }
                Err(e) => return Err(e),
            };
            let a_len = topo.max_rep_length(anchor)?;
            if a_len < target_len {
                return Ok((st.node_interval(vp), ContractPath::PracticalDirect));
            }
            let y = resolve_locus_via_marks(topo, anchor, target_len)?;
            Ok((st.node_interval(y), ContractPath::PracticalMarked))
        }
    }
}

/// Locus of the length-`target_len` prefix of `ℓ(z)`, where `z` is marked and
/// `|ℓ(z)| >= target_len`: level ancestor in the trie lands on the prefix
/// itself; if that node is unmarked, the locus is the shallowest marked
/// ancestor of `z` with sufficient label length.
fn resolve_locus_via_marks(
    topo: &DirectedTopology,
    z: NodeId,
    target_len: usize,
) -> Result<NodeId> {
    let zp = topo.st_to_slt(z)?;
    let x = topo.slt.shape.level_ancestor(zp, target_len)?;
    if topo.slt.shape.is_marked(x) {
        return topo.slt_to_st(x);
    }
    topo.shallowest_marked_at_least(z, target_len)
}

/// The general algorithm forced onto inputs the suffix-link shortcut would
/// normally take; both routes must agree.
#[cfg(test)]
pub(crate) fn contract_main_general(
    topo: &DirectedTopology,
    iv: Interval,
    len: usize,
) -> Result<Interval> {
    contract_main(topo, iv, len, len - 1, false, ContractStrategy::EdgeTest).map(|(iv, _)| iv)
}

/// New secondary-side interval: the old locus or its parent, whichever has the
/// contracted string's frequency.
fn contract_secondary(st: &StTopology, iv: Interval, want_width: usize) -> Result<Interval> {
    let w = st.locus(iv)?;
    if w == 1 {
        return Err(Error::CorruptDescriptor("nonempty string at the root"));
    }
    let parent = st.shape.parent(w)?;
    let p_iv = st.node_interval(parent);
    if p_iv.width() == want_width {
        return Ok(p_iv);
    }
    let w_iv = st.node_interval(w);
    if w_iv.width() == want_width {
        return Ok(w_iv);
    }
    Err(Error::CorruptDescriptor("no locus candidate matches the contracted width"))
}
