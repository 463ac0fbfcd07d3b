//! Matching statistics of a query against the indexed text: an eager strategy
//! that contracts one character at a time, and a lazy one that walks
//! maximal-repeat ancestors on the reverse suffix tree and resynchronizes the
//! forward interval through suffix-link and level-ancestor jumps.

use crate::biindex::{BwtIndex, Descriptor, Side};
use crate::engine::BidiEngine;
use crate::succinct::NodeId;
use crate::textcore::Interval;
use crate::{Error, Result};

/// Per-position match lengths plus an instrumentation counter: contraction
/// calls for the eager strategy, suffix-link steps for the lazy one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MsResult {
    pub values: Vec<usize>,
    pub contractions: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MsStrategy {
    #[default]
    Eager,
    Lazy,
}

/// Matching statistics of `query` (symbols; 0 marks an unmappable position).
pub fn matching_statistics(idx: &BwtIndex, query: &[u8], strategy: MsStrategy) -> MsResult {
    match strategy {
        MsStrategy::Eager => eager(&crate::engine::BwtEngine::new(idx), query),
        MsStrategy::Lazy => lazy(idx, query),
    }
}

/// Eager strategy over any engine: on a failed right extension, contract once
/// on the left and retry.
pub fn eager<E: BidiEngine>(engine: &E, query: &[u8]) -> MsResult {
    let m = query.len();
    let mut values = vec![0usize; m];
    let mut contractions = 0usize;
    let mut d = engine.empty();
    let mut i = 0usize; // current window start
    let mut j = 0usize; // next position to match
    while j < m {
        let c = query[j];
        let extended = if c == 0 { Err(Error::NotFound) } else { engine.extend(&d, Side::Right, c) };
        match extended {
            Ok(e) => {
                d = e;
                j += 1;
            }
            Err(_) if engine.view(&d).len == 0 => {
                debug_assert_eq!(i, j);
                values[i] = 0;
                i += 1;
                j += 1;
            }
            Err(_) => {
                values[i] = j - i;
                d = engine.contract(&d, Side::Left).expect("window is nonempty");
                contractions += 1;
                i += 1;
            }
        }
    }
    for k in i..m {
        values[k] = m - k;
    }
    MsResult { values, contractions }
}

/// Lazy strategy: on failure, find the longest viable maximal-repeat suffix by
/// walking marked ancestors of the reverse locus, then resynchronize the
/// forward interval with suffix links, a lowest-marked-ancestor query and a
/// marked level-ancestor search, instead of per-character contraction.
pub fn lazy(idx: &BwtIndex, query: &[u8]) -> MsResult {
    let m = query.len();
    let mut values = vec![0usize; m];
    let mut sl_steps = 0usize;
    let mut d = idx.empty_descriptor();
    let mut i = 0usize;
    let mut j = 0usize;
    while j < m {
        let c = query[j];
        if c != 0 {
            if let Ok(e) = idx.extend(&d, Side::Right, c) {
                d = e;
                j += 1;
                continue;
            }
        }
        if d.len == 0 {
            debug_assert_eq!(i, j);
            values[i] = 0;
            i += 1;
            j += 1;
            continue;
        }
        // longest maximal-repeat suffix from which the extension is viable
        let target = if c == 0 { None } else { next_viable_suffix(idx, &d, c) };
        match target {
            Some((p, rev_node)) => {
                for k in i..j - p {
                    values[k] = j - k;
                }
                let steps = (j - i) - p;
                d = resync(idx, &d, p, rev_node).expect("maximal repeat resync");
                sl_steps += steps;
                i = j - p;
            }
            None => {
                for k in i..j {
                    values[k] = j - k;
                }
                d = idx.empty_descriptor();
                i = j;
            }
        }
    }
    for k in i..m {
        values[k] = m - k;
    }
    MsResult { values, contractions: sl_steps }
}

/// Walks marked strict ancestors of the reverse locus of `d` (the suffixes
/// that gain right extensions) until one admits a right extension by `c`.
/// Returns the suffix length and its reverse suffix-tree node.
fn next_viable_suffix(idx: &BwtIndex, d: &Descriptor, c: u8) -> Option<(usize, NodeId)> {
    let bwd = &idx.topologies().bwd;
    let w = bwd.st.locus(d.rev).ok()?;
    let mut cur = bwd.st.shape.parent(w).ok()?;
    loop {
        let u = bwd.st.shape.lowest_marked_ancestor(cur).ok()?;
        let p = bwd.max_rep_length(u).ok()?;
        if p == 0 {
            return None;
        }
        let iv = bwd.st.node_interval(u);
        if step_exists(idx, c, iv) {
            return Some((p, u));
        }
        cur = bwd.st.shape.parent(u).ok()?;
    }
}

fn step_exists(idx: &BwtIndex, c: u8, rev_iv: Interval) -> bool {
    let seq = &idx.structures().rev_bwt;
    let lo = seq.rank(c, rev_iv.lo() - 1).unwrap();
    let hi = seq.rank(c, rev_iv.hi()).unwrap();
    hi > lo
}

/// Descriptor of the length-`p` suffix of the current match: the reverse
/// interval comes from the marked reverse node, the forward interval from
/// suffix-link steps followed by the marked-ancestor machinery.
fn resync(idx: &BwtIndex, d: &Descriptor, p: usize, rev_node: NodeId) -> Result<Descriptor> {
    let fwd = &idx.topologies().fwd;
    let bwd = &idx.topologies().bwd;
    let mut v = fwd.st.locus(d.fwd)?;
    for _ in 0..d.len() - p {
        v = fwd.st.suffix_link(v)?;
    }
    let anchor = fwd.st.shape.lowest_marked_ancestor(v)?;
    let y = fwd.shallowest_marked_at_least(anchor, p)?;
    debug_assert_eq!(fwd.max_rep_length(y)?, p);
    let out = Descriptor {
        fwd: fwd.st.node_interval(y),
        rev: bwd.st.node_interval(rev_node),
        len: p as u32,
    };
    debug_assert_eq!(out.fwd.width(), out.rev.width());
    Ok(out)
}
