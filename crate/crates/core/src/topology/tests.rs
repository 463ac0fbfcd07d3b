use super::*;
use crate::succinct::NodeId;
use crate::textcore::oracle::Oracle;
use crate::textcore::{InputFormat, SuffixStructures, Text};
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;

fn setup(bytes: &[u8]) -> (Text, SuffixStructures, TopologyPair) {
    let t = Text::build(bytes, InputFormat::Raw).unwrap();
    let ss = SuffixStructures::build(&t);
    let pair = TopologyPair::build(&t, &ss);
    (t, ss, pair)
}

fn random_text(rng: &mut impl Rng, max_len: usize, sigma: u8) -> Vec<u8> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| rng.gen_range(1..=sigma)).collect()
}

/// Label length of a suffix-tree node, read off the text.
fn string_depth(st: &StTopology, symbols: &[u8], sa: &[u32], v: NodeId) -> usize {
    let n = symbols.len();
    let lo = st.shape.leftmost_leaf(v);
    let hi = st.shape.rightmost_leaf(v);
    if lo == hi {
        return n - sa[lo - 1] as usize + 1;
    }
    let a = &symbols[sa[lo - 1] as usize - 1..];
    let b = &symbols[sa[hi - 1] as usize - 1..];
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn node_label(st: &StTopology, symbols: &[u8], sa: &[u32], v: NodeId) -> Vec<u8> {
    let d = string_depth(st, symbols, sa, v);
    let start = sa[st.shape.leftmost_leaf(v) - 1] as usize - 1;
    symbols[start..start + d].to_vec()
}

#[test]
fn banana_shapes() {
    let (_t, _ss, pair) = setup(b"banana");
    let internal =
        (1..=pair.fwd.st.shape.node_count() as u32).filter(|&v| !pair.fwd.st.shape.is_leaf(v)).count();
    assert_eq!(internal, 4); // root, a, ana, na
    assert_eq!(pair.fwd.slt.shape.marked_count(), 3); // ε, a, ana
    assert_eq!(pair.fwd.st.shape.marked_count(), 3);
    assert_eq!(pair.fwd.st.shape.leaf_count(), 7);
}

#[test]
fn trivial_text() {
    let (_t, _ss, pair) = setup(b"a");
    assert_eq!(pair.fwd.st.shape.leaf_count(), 2);
    assert_eq!(pair.fwd.st.shape.node_count(), 3); // root + two leaves
    assert_eq!(pair.fwd.slt.shape.node_count(), 1); // lone root
    assert_eq!(pair.fwd.st.shape.marked_count(), 0); // single-symbol text: ε excluded
}

#[test]
fn locus_examples() {
    let (t, ss, pair) = setup(b"banana");
    let o = Oracle::new(t.symbols());
    let i_an = o.fwd.interval(&[1, 3]).unwrap();
    let i_ana = o.fwd.interval(&[1, 3, 1]).unwrap();
    let v = pair.fwd.st.locus(i_an).unwrap();
    assert_eq!(pair.fwd.st.node_interval(v), i_ana); // locus of "an" is the "ana" node
    assert_eq!(node_label(&pair.fwd.st, t.symbols(), &ss.sa, v), vec![1, 3, 1]);

    let i_a = o.fwd.interval(&[1]).unwrap();
    let va = pair.fwd.st.locus(i_a).unwrap();
    assert_eq!(pair.fwd.st.node_interval(va), i_a);

    let i_banana = o.fwd.interval(&[2, 1, 3, 1, 3, 1]).unwrap();
    let leaf = pair.fwd.st.locus(i_banana).unwrap();
    assert!(pair.fwd.st.shape.is_leaf(leaf));
}

#[test]
fn suffix_link_examples() {
    let (t, ss, pair) = setup(b"banana");
    let o = Oracle::new(t.symbols());
    let node = |w: &[u8]| pair.fwd.st.locus(o.fwd.interval(w).unwrap()).unwrap();
    let sl = pair.fwd.st.suffix_link(node(&[1, 3, 1])).unwrap(); // ana -> na
    assert_eq!(node_label(&pair.fwd.st, t.symbols(), &ss.sa, sl), vec![3, 1]);
    let sl = pair.fwd.st.suffix_link(node(&[3, 1])).unwrap(); // na -> a
    assert_eq!(node_label(&pair.fwd.st, t.symbols(), &ss.sa, sl), vec![1]);
    let sl = pair.fwd.st.suffix_link(node(&[1])).unwrap(); // a -> root
    assert_eq!(sl, 1);
    assert!(pair.fwd.st.suffix_link(1).is_err());
}

#[test]
fn max_rep_length_and_commute() {
    let (t, _ss, pair) = setup(b"banana");
    let o = Oracle::new(t.symbols());
    let node = |w: &[u8]| pair.fwd.st.locus(o.fwd.interval(w).unwrap()).unwrap();
    assert_eq!(pair.fwd.max_rep_length(node(&[1, 3, 1])).unwrap(), 3);
    assert_eq!(pair.fwd.max_rep_length(node(&[1])).unwrap(), 1);
    assert_eq!(pair.fwd.max_rep_length(1).unwrap(), 0);

    let z = pair.fwd.st_to_slt(node(&[1, 3, 1])).unwrap();
    assert_eq!(pair.fwd.slt.shape.depth(z), 3);
    assert_eq!(pair.fwd.slt_to_st(1).unwrap(), 1);
    // the "na" node is right- but not left-maximal: commuting must fail
    assert!(pair.fwd.st_to_slt(node(&[3, 1])).is_err());
}

#[test]
fn random_texts_match_oracle() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
    for case in 0..60 {
        let sigma = [1u8, 2, 2, 3, 4][case % 5];
        let syms = random_text(&mut rng, 120, sigma);
        let t = Text::from_symbols(&syms, sigma).unwrap();
        let ss = SuffixStructures::build(&t);
        let pair = TopologyPair::build(&t, &ss);
        let o = Oracle::new(t.symbols());
        let reps = o.max_reps();
        let rev_symbols = t.reversed_symbols();
        let rev_o = Oracle::new(&rev_symbols);
        let rev_reps = rev_o.max_reps();

        // marked counts agree across all four topologies and with the oracle
        assert_eq!(pair.fwd.st.shape.marked_count(), reps.len());
        assert_eq!(pair.fwd.slt.shape.marked_count(), reps.len());
        assert_eq!(pair.bwd.st.shape.marked_count(), rev_reps.len());
        assert_eq!(pair.bwd.slt.shape.marked_count(), rev_reps.len());
        assert_eq!(reps.len(), rev_reps.len());

        // marked labels are exactly the maximal repeats, and commuting is
        // label-consistent (slt depth == string depth)
        let mut marked_labels = BTreeSet::new();
        for v in 1..=pair.fwd.st.shape.node_count() as u32 {
            if pair.fwd.st.shape.is_marked(v) {
                let label = node_label(&pair.fwd.st, t.symbols(), &ss.sa, v);
                assert_eq!(
                    pair.fwd.max_rep_length(v).unwrap(),
                    label.len(),
                    "slt depth equals string depth"
                );
                marked_labels.insert(label);
            }
        }
        assert_eq!(marked_labels, reps);

        // suffix links drop the first character, on every internal node
        for v in 2..=pair.fwd.st.shape.node_count() as u32 {
            if pair.fwd.st.shape.is_leaf(v) {
                continue;
            }
            let label = node_label(&pair.fwd.st, t.symbols(), &ss.sa, v);
            let sl = pair.fwd.st.suffix_link(v).unwrap();
            assert_eq!(node_label(&pair.fwd.st, t.symbols(), &ss.sa, sl), label[1..].to_vec());
        }

        // trie node count = maximal repeats + non-maximal internal rev-ST nodes
        let bwd_internal = (1..=pair.bwd.st.shape.node_count() as u32)
            .filter(|&v| !pair.bwd.st.shape.is_leaf(v))
            .count();
        assert_eq!(pair.fwd.slt.shape.node_count(), bwd_internal);

        // locus agrees with the oracle interval for every substring of a sample
        let n = t.len();
        for _ in 0..30 {
            let i = rng.gen_range(1..n); // 1-based, excluding terminator
            let j = rng.gen_range(i..n);
            let w = &t.symbols()[i - 1..j];
            if w.is_empty() {
                continue;
            }
            let iv = o.fwd.interval(w).unwrap();
            let v = pair.fwd.st.locus(iv).unwrap();
            assert_eq!(pair.fwd.st.node_interval(v), iv);
        }
    }
}

#[test]
fn shallowest_marked_search() {
    let (t, ss, pair) = setup(b"CGCGCGAGAGCGAGA");
    let o = Oracle::new(t.symbols());
    // GAG is marked; its marked ancestors are root, G, GA
    let g = t.symbol_of_byte(b'G').unwrap();
    let a = t.symbol_of_byte(b'A').unwrap();
    let gag = pair.fwd.st.locus(o.fwd.interval(&[g, a, g]).unwrap()).unwrap();
    assert!(pair.fwd.st.shape.is_marked(gag));
    let ga = pair.fwd.shallowest_marked_at_least(gag, 2).unwrap();
    assert_eq!(node_label(&pair.fwd.st, t.symbols(), &ss.sa, ga), vec![g, a]);
    let gn = pair.fwd.shallowest_marked_at_least(gag, 1).unwrap();
    assert_eq!(node_label(&pair.fwd.st, t.symbols(), &ss.sa, gn), vec![g]);
    assert_eq!(pair.fwd.shallowest_marked_at_least(gag, 0).unwrap(), 1);
    assert_eq!(pair.fwd.shallowest_marked_at_least(gag, 3).unwrap(), gag);
}
