//! CDAWG construction for both text directions, run-length BWTs, the
//! CDAWG-based suffix-tree representation with affix links, and the second
//! bidirectional engine with order jumps whose cost does not depend on the
//! size of the order change.

mod build;
mod rlbwt;

pub use rlbwt::{RlBwt, Run};

use crate::biindex::{Descriptor, Side};
use crate::engine::BidiEngine;
use crate::textcore::Interval;
use crate::{Error, Result};

pub const NO_CLASS: u32 = u32::MAX;

/// Arc of the CDAWG: labeled by a substring, stored as its first character and
/// length, plus the target member's interval for the representative so member
/// intervals shift in O(1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdawgArc {
    pub ch: u8,
    pub right: u32,
    pub target: u32,
    pub child_lo: u32,
    pub child_hi: u32,
}

/// Weiner-link arc out of a class representative: the locus class of the
/// left-extension and that locus node's label length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeinerArc {
    pub ch: u8,
    pub target: u32,
    pub target_len: u32,
}

/// Suffix link of the shortest class member, leaving the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlNext {
    pub class: u32,
    pub len: u32,
    pub lo: u32,
    pub hi: u32,
}

/// Per-member navigation data: the suffix-tree parent and the lowest marked
/// (maximal-repeat) ancestor-or-self.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberInfo {
    pub parent_class: u32,
    pub parent_len: u32,
    pub parent_lo: u32,
    pub parent_hi: u32,
    pub lma_class: u32,
}

/// One maximal-repeat equivalence class (or the sink). Members are the
/// right-maximal strings of the class, ordered by decreasing length starting
/// with the representative; for the sink the members are the leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdawgNode {
    pub length: u32,
    pub size: u32,
    pub first: u32,
    pub last: u32,
    pub arcs: Vec<CdawgArc>,
    pub weiner: Vec<WeinerArc>,
    /// Class of the longest proper maximal-repeat suffix; `NO_CLASS` if none.
    pub suffix_link: u32,
    pub sl_next: Option<SlNext>,
    /// Paired class in the other direction's CDAWG (locus of the reversed label).
    pub affix: u32,
    pub members: Vec<MemberInfo>,
}

/// A right-maximal string (suffix-tree node) in the CDAWG representation:
/// its class, its label length, and its BWT interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CdawgStId {
    pub class: u32,
    pub len: u32,
    pub lo: u32,
    pub hi: u32,
}

impl CdawgStId {
    pub fn interval(&self) -> Interval {
        Interval { lo: self.lo, hi: self.hi }
    }

    pub fn width(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    fn same_node(&self, other: &CdawgStId) -> bool {
        self.class == other.class && self.len == other.len
    }
}

/// CDAWG of one direction: class 0 is the root, the last class is the sink,
/// the classes between are the remaining maximal repeats in suffix-tree
/// preorder. A binary-lifted maximal-repeat tree answers weighted ancestor
/// queries over label lengths.
#[derive(Debug, Clone)]
pub struct Cdawg {
    pub nodes: Vec<CdawgNode>,
    pub sink: u32,
    pub n: u32,
    /// True when the root is kept although the empty string fails the
    /// maximal-repeat test (single-symbol texts).
    pub synthetic_root: bool,
    mr_parent: Vec<u32>,
    mr_jump: Vec<Vec<u32>>,
}

impl Cdawg {
    /// Reassembles a CDAWG from serialized parts, rebuilding the jump table.
    pub fn from_parts(
        nodes: Vec<CdawgNode>,
        sink: u32,
        n: u32,
        synthetic_root: bool,
        mr_parent: Vec<u32>,
    ) -> Self {
        let class_count = nodes.len();
        let levels = (usize::BITS - class_count.leading_zeros()) as usize;
        let mut mr_jump = Vec::with_capacity(levels.max(1));
        mr_jump.push(mr_parent.clone());
        for level in 1..levels.max(1) {
            let prev: &Vec<u32> = &mr_jump[level - 1];
            let mut cur = vec![NO_CLASS; class_count];
            for v in 0..class_count {
                let half = prev[v];
                if half != NO_CLASS {
                    cur[v] = prev[half as usize];
                }
            }
            mr_jump.push(cur);
        }
        Cdawg { nodes, sink, n, synthetic_root, mr_parent, mr_jump }
    }

    pub fn mr_parents(&self) -> &[u32] {
        &self.mr_parent
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of labeled arcs (Weiner arcs not counted).
    pub fn arc_count(&self) -> usize {
        self.nodes.iter().map(|v| v.arcs.len()).sum()
    }

    /// Non-sink nodes that are genuine maximal repeats.
    pub fn max_rep_count(&self) -> usize {
        self.nodes.len() - 1 - self.synthetic_root as usize
    }

    pub fn node(&self, class: u32) -> &CdawgNode {
        &self.nodes[class as usize]
    }

    /// Identifier of a class representative.
    pub fn repeat_id(&self, class: u32) -> CdawgStId {
        let v = self.node(class);
        CdawgStId { class, len: v.length, lo: v.first, hi: v.last }
    }

    pub fn member(&self, class: u32, len: u32) -> &MemberInfo {
        let v = self.node(class);
        debug_assert!(len <= v.length && v.length - len < v.size);
        &v.members[(v.length - len) as usize]
    }

    /// Shallowest maximal-repeat ancestor-or-self of `class` with label length
    /// at least `target`; requires `length(class) >= target`.
    pub fn mr_shallowest_at_least(&self, class: u32, target: usize) -> u32 {
        debug_assert!(self.node(class).length as usize >= target);
        let mut cur = class;
        for level in (0..self.mr_jump.len()).rev() {
            let anc = self.mr_jump[level][cur as usize];
            if anc != NO_CLASS && self.node(anc).length as usize >= target {
                cur = anc;
            }
        }
        cur
    }

    /// Deepest maximal-repeat ancestor-or-self of `class` with label length at
    /// most `target` (the root always qualifies).
    pub fn mr_deepest_at_most(&self, class: u32, target: usize) -> u32 {
        if self.node(class).length as usize <= target {
            return class;
        }
        let mut cur = class;
        for level in (0..self.mr_jump.len()).rev() {
            let anc = self.mr_jump[level][cur as usize];
            if anc != NO_CLASS && self.node(anc).length as usize > target {
                cur = anc;
            }
        }
        self.mr_parent[cur as usize]
    }

    /// Nodes and arcs surviving removal of all maximal repeats shorter than
    /// `tau`. The sink always survives; arcs need both endpoints alive.
    pub fn pruned_counts(&self, tau: usize) -> (usize, usize) {
        let alive = |class: u32| -> bool {
            if class == self.sink {
                return true;
            }
            if class == 0 && self.synthetic_root {
                return false;
            }
            self.node(class).length as usize >= tau
        };
        let mut nodes = 1; // sink
        let mut arcs = 0;
        for class in 0..self.nodes.len() as u32 {
            if class == self.sink || !alive(class) {
                continue;
            }
            nodes += 1;
            arcs += self.node(class).arcs.iter().filter(|a| alive(a.target)).count();
        }
        (nodes, arcs)
    }
}

/// Suffix-tree operations over one CDAWG and its run-length BWT.
pub struct StOps<'a> {
    pub cdawg: &'a Cdawg,
    pub rlbwt: &'a RlBwt,
}

impl StOps<'_> {
    pub fn root(&self) -> CdawgStId {
        self.cdawg.repeat_id(0)
    }

    pub fn string_depth(&self, id: &CdawgStId) -> usize {
        id.len as usize
    }

    /// Child along the edge whose label starts with `c`.
    pub fn child(&self, id: &CdawgStId, c: u8) -> Result<CdawgStId> {
        let v = self.cdawg.node(id.class);
        let arc = match v.arcs.binary_search_by_key(&c, |a| a.ch) {
            Ok(i) => &v.arcs[i],
            Err(_) => return Err(Error::NotFound),
        };
        // subtrees of class members are isomorphic, and their leaf intervals
        // keep relative order, so the child interval is the representative's
        // child offset applied to this member's interval
        Ok(CdawgStId {
            class: arc.target,
            len: id.len + arc.right,
            lo: id.lo + (arc.child_lo - v.first),
            hi: id.lo + (arc.child_hi - v.first),
        })
    }

    pub fn parent(&self, id: &CdawgStId) -> Result<CdawgStId> {
        if id.len == 0 {
            return Err(Error::Root("parent"));
        }
        let m = self.cdawg.member(id.class, id.len);
        Ok(CdawgStId {
            class: m.parent_class,
            len: m.parent_len,
            lo: m.parent_lo,
            hi: m.parent_hi,
        })
    }

    pub fn suffix_link(&self, id: &CdawgStId) -> Result<CdawgStId> {
        if id.len == 0 {
            return Err(Error::Root("suffix link"));
        }
        let v = self.cdawg.node(id.class);
        let idx = v.length - id.len;
        if idx + 1 < v.size {
            // stays inside the class: frequencies match, so the psi image of
            // the interval is the whole interval of the one-shorter suffix
            Ok(CdawgStId {
                class: id.class,
                len: id.len - 1,
                lo: self.rlbwt.psi(id.lo as usize)? as u32,
                hi: self.rlbwt.psi(id.hi as usize)? as u32,
            })
        } else {
            match &v.sl_next {
                Some(s) => Ok(CdawgStId { class: s.class, len: s.len, lo: s.lo, hi: s.hi }),
                None => Err(Error::Root("suffix link")),
            }
        }
    }

    /// Locus of `c · label`: in-class for non-representative members (their
    /// single left extension), stored Weiner arc for representatives.
    pub fn weiner_link(&self, id: &CdawgStId, c: u8) -> Result<CdawgStId> {
        if c == 0 || c > self.rlbwt.sigma() {
            return Err(Error::InvalidSymbol(c as u16));
        }
        let (lo, hi) = self.rlbwt.lf_step(c, id.lo as usize, id.hi as usize);
        if lo > hi {
            return Err(Error::NotFound);
        }
        let v = self.cdawg.node(id.class);
        if id.len == v.length {
            let arc = match v.weiner.binary_search_by_key(&c, |a| a.ch) {
                Ok(i) => &v.weiner[i],
                Err(_) => unreachable!("nonempty LF step from a representative has a Weiner arc"),
            };
            Ok(CdawgStId { class: arc.target, len: arc.target_len, lo: lo as u32, hi: hi as u32 })
        } else {
            // non-representatives have exactly one left extension
            debug_assert!(id.len < v.length);
            Ok(CdawgStId { class: id.class, len: id.len + 1, lo: lo as u32, hi: hi as u32 })
        }
    }

    fn enumerate_interval(&self, lo: usize, hi: usize) -> Vec<u8> {
        self.rlbwt.distinct_in_range(lo, hi)
    }

    fn is_uniform(&self, lo: usize, hi: usize) -> bool {
        self.rlbwt.range_is_uniform(lo, hi)
    }
}

/// CDAWGs and run-length BWTs for both directions: the maximal-repeat-sized
/// counterpart of the plain BWT index.
pub struct CdawgIndex {
    pub fwd: Cdawg,
    pub bwd: Cdawg,
    pub fwd_rlbwt: RlBwt,
    pub bwd_rlbwt: RlBwt,
}

impl CdawgIndex {
    pub fn build(
        text: &crate::textcore::Text,
        ss: &crate::textcore::SuffixStructures,
        pair: &crate::topology::TopologyPair,
    ) -> Self {
        build::build_index(text, ss, pair)
    }

    pub fn from_parts(fwd: Cdawg, bwd: Cdawg, fwd_rlbwt: RlBwt, bwd_rlbwt: RlBwt) -> Self {
        CdawgIndex { fwd, bwd, fwd_rlbwt, bwd_rlbwt }
    }

    pub fn n(&self) -> usize {
        self.fwd.n as usize
    }

    pub fn forward_st(&self) -> StOps<'_> {
        StOps { cdawg: &self.fwd, rlbwt: &self.fwd_rlbwt }
    }

    pub fn backward_st(&self) -> StOps<'_> {
        StOps { cdawg: &self.bwd, rlbwt: &self.bwd_rlbwt }
    }
}

/// Substring state on the CDAWG engine: the locus of the string in each
/// direction's suffix tree, plus the string's length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CdawgState {
    pub fwd: CdawgStId,
    pub rev: CdawgStId,
    pub len: u32,
}

/// Bidirectional engine over [`CdawgIndex`].
pub struct CdawgEngine<'a> {
    idx: &'a CdawgIndex,
}

impl<'a> CdawgEngine<'a> {
    pub fn new(idx: &'a CdawgIndex) -> Self {
        CdawgEngine { idx }
    }

    pub fn index(&self) -> &'a CdawgIndex {
        self.idx
    }

    fn ops(&self, side: Side) -> (StOps<'_>, StOps<'_>) {
        // (main, secondary): the main suffix tree sees the contraction at the
        // front of its string
        match side {
            Side::Left => (self.idx.forward_st(), self.idx.backward_st()),
            Side::Right => (self.idx.backward_st(), self.idx.forward_st()),
        }
    }

    /// State of the representative of `class` and its affix pairing.
    fn max_rep_state(&self, class: u32, class_is_fwd: bool) -> CdawgState {
        let (main, other) = if class_is_fwd {
            (&self.idx.fwd, &self.idx.bwd)
        } else {
            (&self.idx.bwd, &self.idx.fwd)
        };
        let a = main.node(class).affix;
        let (m_id, o_id) = (main.repeat_id(class), other.repeat_id(a));
        debug_assert_eq!(m_id.len, o_id.len);
        let len = m_id.len;
        if class_is_fwd {
            CdawgState { fwd: m_id, rev: o_id, len }
        } else {
            CdawgState { fwd: o_id, rev: m_id, len }
        }
    }
}

/// Contraction of the front character on one suffix tree: right-maximality
/// is a length comparison here, and the level-ancestor step runs on the
/// binary-lifted maximal-repeat tree.
fn contract_main(ops: &StOps<'_>, id: &CdawgStId, len: usize, maximal: bool) -> Result<CdawgStId> {
    let target = len - 1;
    if maximal {
        return ops.suffix_link(id);
    }
    let u = ops.parent(id)?;
    let up = if u.len == 0 { u } else { ops.suffix_link(&u)? };
    let vp = ops.suffix_link(id)?;
    let zp = ops.parent(&vp)?;
    if zp.same_node(&up) {
        return Ok(vp);
    }
    assert_eq!(
        zp.len,
        ops.cdawg.node(zp.class).length,
        "parent of the suffix-link image must be a maximal repeat"
    );
    if target as u32 > zp.len {
        return Ok(vp);
    }
    let y = ops.cdawg.mr_shallowest_at_least(zp.class, target);
    Ok(ops.cdawg.repeat_id(y))
}

/// Old locus or its parent, whichever matches the contracted frequency.
fn contract_secondary(ops: &StOps<'_>, id: &CdawgStId, want_width: usize) -> Result<CdawgStId> {
    let p = ops.parent(id)?;
    if p.width() == want_width {
        return Ok(p);
    }
    if id.width() == want_width {
        return Ok(*id);
    }
    Err(Error::CorruptDescriptor("no locus candidate matches the contracted width"))
}

impl BidiEngine for CdawgEngine<'_> {
    type State = CdawgState;

    fn empty(&self) -> CdawgState {
        CdawgState { fwd: self.idx.fwd.repeat_id(0), rev: self.idx.bwd.repeat_id(0), len: 0 }
    }

    fn view(&self, s: &CdawgState) -> Descriptor {
        Descriptor { fwd: s.fwd.interval(), rev: s.rev.interval(), len: s.len }
    }

    fn extend(&self, s: &CdawgState, side: Side, c: u8) -> Result<CdawgState> {
        let (fwd_ops, bwd_ops) = (self.idx.forward_st(), self.idx.backward_st());
        let out = match side {
            Side::Right => {
                let rev = bwd_ops.weiner_link(&s.rev, c)?;
                let fwd = if s.len < s.fwd.len { s.fwd } else { fwd_ops.child(&s.fwd, c)? };
                CdawgState { fwd, rev, len: s.len + 1 }
            }
            Side::Left => {
                let fwd = fwd_ops.weiner_link(&s.fwd, c)?;
                let rev = if s.len < s.rev.len { s.rev } else { bwd_ops.child(&s.rev, c)? };
                CdawgState { fwd, rev, len: s.len + 1 }
            }
        };
        debug_assert_eq!(out.fwd.width(), out.rev.width());
        Ok(out)
    }

    fn contract(&self, s: &CdawgState, side: Side) -> Result<CdawgState> {
        if s.len == 0 {
            return Err(Error::Empty);
        }
        if s.len == 1 {
            return Ok(self.empty());
        }
        let (main_ops, sec_ops) = self.ops(side);
        let (main_id, sec_id, maximal) = match side {
            Side::Left => (&s.fwd, &s.rev, s.len == s.fwd.len),
            Side::Right => (&s.rev, &s.fwd, s.len == s.rev.len),
        };
        let new_main = contract_main(&main_ops, main_id, s.len as usize, maximal)?;
        let new_sec = contract_secondary(&sec_ops, sec_id, new_main.width())?;
        Ok(match side {
            Side::Left => CdawgState { fwd: new_main, rev: new_sec, len: s.len - 1 },
            Side::Right => CdawgState { fwd: new_sec, rev: new_main, len: s.len - 1 },
        })
    }

    fn enumerate(&self, s: &CdawgState, side: Side) -> Vec<u8> {
        match side {
            Side::Left => {
                self.idx.forward_st().enumerate_interval(s.fwd.lo as usize, s.fwd.hi as usize)
            }
            Side::Right => {
                self.idx.backward_st().enumerate_interval(s.rev.lo as usize, s.rev.hi as usize)
            }
        }
    }

    fn is_maximal(&self, s: &CdawgState, side: Side) -> bool {
        match side {
            Side::Left => !self.idx.forward_st().is_uniform(s.fwd.lo as usize, s.fwd.hi as usize),
            Side::Right => !self.idx.backward_st().is_uniform(s.rev.lo as usize, s.rev.hi as usize),
        }
    }

    fn freq(&self, s: &CdawgState) -> usize {
        s.fwd.width()
    }

    /// Class jump: the shortest both-maximal superstring is the representative
    /// of the forward locus's class, paired through its affix link.
    fn inc_to_max_rep(&self, s: &CdawgState) -> Result<(CdawgState, usize)> {
        if self.freq(s) < 2 {
            return Err(Error::NotFound);
        }
        debug_assert_ne!(s.fwd.class, self.idx.fwd.sink);
        let out = self.max_rep_state(s.fwd.class, true);
        Ok((out, out.len as usize))
    }

    /// Suffix-link-arc jump when the string is maximal on the far side;
    /// otherwise a weighted ancestor query on the opposite maximal-repeat tree
    /// from the stored lowest marked ancestor.
    fn dec_to_max_rep(&self, s: &CdawgState, side: Side) -> Result<(CdawgState, usize)> {
        if s.len == 0 {
            return Err(Error::Empty);
        }
        let (keeps_fwd_suffix, far_maximal, opp_cdawg, opp_id) = match side {
            // dropping on the left keeps a suffix of the forward string;
            // candidate lengths live on the backward maximal-repeat tree
            Side::Left => (true, s.len == s.fwd.len, &self.idx.bwd, &s.rev),
            Side::Right => (false, s.len == s.rev.len, &self.idx.fwd, &s.fwd),
        };
        if far_maximal {
            let main_cdawg = if keeps_fwd_suffix { &self.idx.fwd } else { &self.idx.bwd };
            let cls = if keeps_fwd_suffix { s.fwd.class } else { s.rev.class };
            let g = main_cdawg.node(cls).suffix_link;
            if g == NO_CLASS || main_cdawg.node(g).length == 0 {
                return Ok((self.empty(), 0));
            }
            let out = self.max_rep_state(g, keeps_fwd_suffix);
            return Ok((out, out.len as usize));
        }
        let lma = opp_cdawg.member(opp_id.class, opp_id.len).lma_class;
        if lma == NO_CLASS {
            return Ok((self.empty(), 0));
        }
        let cls = opp_cdawg.mr_deepest_at_most(lma, s.len as usize);
        if cls == NO_CLASS || opp_cdawg.node(cls).length == 0 {
            return Ok((self.empty(), 0));
        }
        let out = self.max_rep_state(cls, !keeps_fwd_suffix);
        Ok((out, out.len as usize))
    }
}
