//! Infinite-order, frequency-aware, bidirectional de Bruijn graph over a
//! bidirectional engine: node membership, arcs in both the occurring and the
//! complete semantics, traversal, and unit / frequency / maximal-repeat order
//! changes with no construction-time bound on the order.

use crate::biindex::Side;
use crate::engine::BidiEngine;
use crate::{Error, Result};

/// A node of the current-order graph: engine state plus the order `k`, which
/// always equals the represented string's length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DbgHandle<S> {
    pub state: S,
    pub k: usize,
}

/// Arc semantics: `Occurring` requires the (k+1)-mer in the text; `Complete`
/// only requires both endpoint k-mers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcVariant {
    Occurring,
    Complete,
}

/// A traversed arc. `state` holds the (k+1)-mer context when it occurs;
/// complete-variant arcs over absent (k+1)-mers have frequency 0 and no state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DbgArc<S> {
    pub state: Option<S>,
    pub label: u8,
    pub variant: ArcVariant,
    pub freq: usize,
}

/// Arc labels out of a node on one side. Terminator arcs exist only in the
/// occurring variant and are reported separately so callers can decide policy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcLabels {
    pub symbols: Vec<u8>,
    pub terminator: bool,
}

impl ArcLabels {
    pub fn degree(&self) -> usize {
        self.symbols.len() + self.terminator as usize
    }
}

/// Order-change requests; sides name the end where symbols are added/removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderChange {
    IncUnit(Side, u8),
    DecUnit(Side),
    IncFreq(Side),
    DecFreq(Side),
    IncToMaxRep,
    DecToMaxRep(Side),
}

/// De Bruijn view over an engine.
pub struct DbgView<'a, E: BidiEngine> {
    engine: &'a E,
}

impl<'a, E: BidiEngine> DbgView<'a, E> {
    pub fn new(engine: &'a E) -> Self {
        DbgView { engine }
    }

    pub fn engine(&self) -> &'a E {
        self.engine
    }

    /// Membership: the node of k-mer `w` (k = `w.len()`), by backward search.
    pub fn node(&self, w: &[u8]) -> Result<DbgHandle<E::State>> {
        let mut state = self.engine.empty();
        for &c in w {
            state = self.engine.extend(&state, Side::Right, c)?;
        }
        Ok(DbgHandle { state, k: w.len() })
    }

    pub fn freq(&self, h: &DbgHandle<E::State>) -> usize {
        self.engine.freq(&h.state)
    }

    /// Labels of arcs out of `h` on `side`.
    pub fn arcs(&self, h: &DbgHandle<E::State>, side: Side, variant: ArcVariant) -> Result<ArcLabels> {
        match variant {
            ArcVariant::Occurring => Ok(split_terminator(self.engine.enumerate(&h.state, side))),
            ArcVariant::Complete => {
                // shift off the opposite end, then look at the extensions of
                // the (k-1)-mer; terminator destinations are not k-mers
                let shifted = if h.k == 0 {
                    h.state.clone()
                } else {
                    self.engine.contract(&h.state, side.opposite())?
                };
                let mut labels = split_terminator(self.engine.enumerate(&shifted, side));
                labels.terminator = false;
                Ok(labels)
            }
        }
    }

    pub fn degree(&self, h: &DbgHandle<E::State>, side: Side, variant: ArcVariant) -> Result<usize> {
        Ok(self.arcs(h, side, variant)?.degree())
    }

    /// Follows the arc labeled `c` out of `h` on `side`, returning the
    /// destination node of the same order and the arc traversed.
    pub fn follow(
        &self,
        h: &DbgHandle<E::State>,
        side: Side,
        c: u8,
        variant: ArcVariant,
    ) -> Result<(DbgHandle<E::State>, DbgArc<E::State>)> {
        if c == 0 {
            return Err(Error::InvalidSymbol(0));
        }
        match variant {
            ArcVariant::Occurring => {
                let long = self.engine.extend(&h.state, side, c)?;
                let freq = self.engine.freq(&long);
                let dest = self.engine.contract(&long, side.opposite())?;
                Ok((
                    DbgHandle { state: dest, k: h.k },
                    DbgArc { state: Some(long), label: c, variant, freq },
                ))
            }
            ArcVariant::Complete => {
                if h.k == 0 {
                    return Err(Error::Empty);
                }
                let shifted = self.engine.contract(&h.state, side.opposite())?;
                let dest = self.engine.extend(&shifted, side, c)?;
                let long = self.engine.extend(&h.state, side, c).ok();
                let freq = long.as_ref().map(|s| self.engine.freq(s)).unwrap_or(0);
                Ok((
                    DbgHandle { state: dest, k: h.k },
                    DbgArc { state: long, label: c, variant, freq },
                ))
            }
        }
    }

    /// Changes the order, returning the new node and the new order `k'`.
    pub fn change_order(
        &self,
        h: &DbgHandle<E::State>,
        mode: OrderChange,
    ) -> Result<(DbgHandle<E::State>, usize)> {
        let (state, k) = match mode {
            OrderChange::IncUnit(side, c) => {
                let s = self.engine.extend(&h.state, side, c)?;
                (s, h.k + 1)
            }
            OrderChange::DecUnit(side) => {
                let s = self.engine.contract(&h.state, side)?;
                (s, h.k - 1)
            }
            OrderChange::IncFreq(side) => self.engine.inc_freq(&h.state, side)?,
            OrderChange::DecFreq(side) => self.engine.dec_freq(&h.state, side)?,
            OrderChange::IncToMaxRep => self.engine.inc_to_max_rep(&h.state)?,
            OrderChange::DecToMaxRep(side) => self.engine.dec_to_max_rep(&h.state, side)?,
        };
        Ok((DbgHandle { state, k }, k))
    }

    /// Hidden-order variant: the new order is consumed internally.
    pub fn change_order_hidden(
        &self,
        h: &DbgHandle<E::State>,
        mode: OrderChange,
    ) -> Result<DbgHandle<E::State>> {
        Ok(self.change_order(h, mode)?.0)
    }
}

fn split_terminator(symbols: Vec<u8>) -> ArcLabels {
    match symbols.split_first() {
        Some((0, rest)) => ArcLabels { symbols: rest.to_vec(), terminator: true },
        _ => ArcLabels { symbols, terminator: false },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biindex::BwtIndex;
    use crate::engine::BwtEngine;
    use crate::textcore::{InputFormat, Text};
    use std::collections::{BTreeMap, BTreeSet};

    fn index(bytes: &[u8]) -> BwtIndex {
        BwtIndex::build(Text::build(bytes, InputFormat::Raw).unwrap())
    }

    fn m(idx: &BwtIndex, w: &[u8]) -> Vec<u8> {
        idx.text().map_bytes(w).unwrap()
    }

    #[test]
    fn node_examples() {
        let idx = index(b"banana");
        let e = BwtEngine::new(&idx);
        let g = DbgView::new(&e);
        let h = g.node(&m(&idx, b"an")).unwrap();
        assert_eq!(g.freq(&h), 2);
        assert_eq!(h.k, 2);
        assert!(g.node(&m(&idx, b"n").repeat(2)).is_err()); // nn absent
        assert_eq!(g.freq(&g.node(&m(&idx, b"a")).unwrap()), 3);
    }

    #[test]
    fn arc_examples() {
        let idx = index(b"banana");
        let e = BwtEngine::new(&idx);
        let g = DbgView::new(&e);
        let an = g.node(&m(&idx, b"an")).unwrap();
        let occ = g.arcs(&an, Side::Right, ArcVariant::Occurring).unwrap();
        assert_eq!(occ.symbols, m(&idx, b"a"));
        assert!(!occ.terminator);

        let na = g.node(&m(&idx, b"na")).unwrap();
        let complete = g.arcs(&na, Side::Right, ArcVariant::Complete).unwrap();
        assert_eq!(complete.symbols, m(&idx, b"n")); // a# shifts out; only "an" survives
        assert!(!complete.terminator);

        // unique k-mer ending at the terminator
        let banana = g.node(&m(&idx, b"banana")).unwrap();
        let occ = g.arcs(&banana, Side::Right, ArcVariant::Occurring).unwrap();
        assert!(occ.symbols.is_empty() && occ.terminator);
    }

    #[test]
    fn follow_examples() {
        let idx = index(b"banana");
        let e = BwtEngine::new(&idx);
        let g = DbgView::new(&e);
        let ba = g.node(&m(&idx, b"ba")).unwrap();
        let (an, arc) = g.follow(&ba, Side::Right, m(&idx, b"n")[0], ArcVariant::Occurring).unwrap();
        assert_eq!(an, g.node(&m(&idx, b"an")).unwrap());
        assert_eq!(arc.freq, 1); // "ban"

        let (na, arc) = g.follow(&an, Side::Right, m(&idx, b"a")[0], ArcVariant::Occurring).unwrap();
        assert_eq!(na, g.node(&m(&idx, b"na")).unwrap());
        assert_eq!(arc.freq, 2); // "ana"

        assert!(g.follow(&an, Side::Right, 9, ArcVariant::Occurring).is_err());
        assert_eq!(g.follow(&an, Side::Right, 0, ArcVariant::Occurring), Err(Error::InvalidSymbol(0)));

        // bidirectional round trip: right arc then the mirroring left arc
        let first = m(&idx, b"b")[0];
        let (back, _) = g.follow(&an, Side::Left, first, ArcVariant::Occurring).unwrap();
        assert_eq!(back, ba);
    }

    #[test]
    fn order_change_examples() {
        let idx = index(b"banana");
        let e = BwtEngine::new(&idx);
        let g = DbgView::new(&e);

        let an = g.node(&m(&idx, b"an")).unwrap();
        let (h, k) = g.change_order(&an, OrderChange::IncFreq(Side::Right)).unwrap();
        assert_eq!(k, 3);
        assert_eq!(h, g.node(&m(&idx, b"ana")).unwrap());
        assert_eq!(g.freq(&h), 2);

        let (h2, k2) = g.change_order(&h, OrderChange::DecFreq(Side::Right)).unwrap();
        assert_eq!(k2, 1);
        assert_eq!(h2, g.node(&m(&idx, b"a")).unwrap());
        assert_eq!(g.freq(&h2), 3);

        let n = g.node(&m(&idx, b"n")).unwrap();
        let (h3, k3) = g.change_order(&n, OrderChange::IncToMaxRep).unwrap();
        assert_eq!(k3, 3);
        assert_eq!(h3, g.node(&m(&idx, b"ana")).unwrap());

        let (h4, k4) = g.change_order(&h3, OrderChange::DecToMaxRep(Side::Left)).unwrap();
        assert_eq!(k4, 1); // longest proper maximal-repeat suffix of "ana" is "a"
        assert_eq!(h4, g.node(&m(&idx, b"a")).unwrap());

        // hidden-order wrapper returns the same node
        let hidden = g.change_order_hidden(&n, OrderChange::IncToMaxRep).unwrap();
        assert_eq!(hidden, h3);
    }

    /// Hash-based de Bruijn oracle for one order.
    struct HashDbg {
        nodes: BTreeMap<Vec<u8>, usize>,
        k: usize,
    }

    impl HashDbg {
        fn new(text: &[u8], k: usize) -> Self {
            HashDbg { nodes: crate::textcore::oracle::kmer_counts(text, k), k }
        }

        fn right_occurring(&self, text: &[u8], v: &[u8]) -> BTreeSet<u8> {
            crate::textcore::oracle::kmer_counts(text, self.k + 1)
                .keys()
                .filter(|w| &w[..self.k] == v)
                .map(|w| w[self.k])
                .collect()
        }

        fn right_complete(&self, v: &[u8]) -> BTreeSet<u8> {
            self.nodes
                .keys()
                .filter(|w| w[..self.k - 1.min(self.k)] == v[1.min(self.k)..])
                .map(|w| w[self.k - 1])
                .collect()
        }
    }

    #[test]
    fn matches_hash_oracle_small() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        for _ in 0..15 {
            let sigma = rng.gen_range(2..=4) as u8;
            let len = rng.gen_range(4..200);
            let syms: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=sigma)).collect();
            let text = Text::from_symbols(&syms, sigma).unwrap();
            let idx = BwtIndex::build(text);
            let e = BwtEngine::new(&idx);
            let g = DbgView::new(&e);
            let body = &idx.text().symbols()[..idx.text().len() - 1];
            for k in 1..=6usize.min(len) {
                let oracle = HashDbg::new(body, k);
                for (kmer, &count) in &oracle.nodes {
                    let h = g.node(kmer).unwrap();
                    assert_eq!(g.freq(&h), count);
                    let occ = g.arcs(&h, Side::Right, ArcVariant::Occurring).unwrap();
                    let want: Vec<u8> = oracle.right_occurring(body, kmer).into_iter().collect();
                    assert_eq!(occ.symbols, want, "occurring arcs of {kmer:?} k={k}");
                    // terminator arc iff the k-mer ends the text
                    assert_eq!(occ.terminator, body.ends_with(kmer));
                    let complete = g.arcs(&h, Side::Right, ArcVariant::Complete).unwrap();
                    let want: Vec<u8> = oracle.right_complete(kmer).into_iter().collect();
                    assert_eq!(complete.symbols, want, "complete arcs of {kmer:?} k={k}");
                }
            }
        }
    }

    #[test]
    fn bidirectional_round_trip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..10 {
            let sigma = rng.gen_range(2..=4) as u8;
            let len = rng.gen_range(4..150);
            let syms: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=sigma)).collect();
            let text = Text::from_symbols(&syms, sigma).unwrap();
            let idx = BwtIndex::build(text);
            let e = BwtEngine::new(&idx);
            let g = DbgView::new(&e);
            for _ in 0..100 {
                let start = rng.gen_range(0..len);
                let k = rng.gen_range(1..=(len - start).min(8));
                let h = g.node(&syms[start..start + k]).unwrap();
                let first = syms[start];
                let c = rng.gen_range(1..=sigma);
                // a right arc followed by the mirroring left arc returns home
                if let Ok((fwd, _)) = g.follow(&h, Side::Right, c, ArcVariant::Occurring) {
                    if let Ok((back, _)) = g.follow(&fwd, Side::Left, first, ArcVariant::Occurring) {
                        assert_eq!(back, h);
                    }
                }
            }
        }
    }

    #[test]
    fn complete_variant_follow_absent_arc() {
        // "ab" and "bc" share the 1-mer "b": complete arc a->c exists at k=2
        // even though "abc" never occurs
        let idx = index(b"abxbc");
        let e = BwtEngine::new(&idx);
        let g = DbgView::new(&e);
        let ab = g.node(&m(&idx, b"ab")).unwrap();
        let c = m(&idx, b"c")[0];
        let (dest, arc) = g.follow(&ab, Side::Right, c, ArcVariant::Complete).unwrap();
        assert_eq!(dest, g.node(&m(&idx, b"bc")).unwrap());
        assert_eq!(arc.freq, 0);
        assert!(arc.state.is_none());
    }
}
