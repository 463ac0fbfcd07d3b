use super::{DirectedTopology, SltTopology, StTopology, TopologyPair};
use crate::succinct::{BitVec, BpTree, CharSeq};
use crate::textcore::{SuffixStructures, Text};

/// Kasai's algorithm. `lcp[row-1]` is the lcp between rows `row-1` and `row`
/// (1-based rows); `lcp[0] = 0`.
pub fn lcp_array(symbols: &[u8], sa: &[u32], isa: &[u32]) -> Vec<u32> {
    let n = symbols.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for pos in 0..n {
        let row = isa[pos] as usize; // 1-based
        if row > 1 {
            let q = sa[row - 2] as usize - 1; // previous row's start, 0-based
            while pos + h < n && q + h < n && symbols[pos + h] == symbols[q + h] {
                h += 1;
            }
            lcp[row - 1] = h as u32;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

/// Explicit suffix-tree node used during construction and by the CDAWG builder.
#[derive(Debug, Clone)]
pub struct StNode {
    pub parent: u32,
    pub children: Vec<u32>,
    /// Label length; for leaves this is the full suffix length including `#`.
    pub depth: u32,
    /// Leaf interval as 1-based rows.
    pub lo: u32,
    pub hi: u32,
    /// Row for leaves, 0 for internal nodes.
    pub row: u32,
}

/// Explicit suffix tree with children in lexicographic order; node 0 is the root.
#[derive(Debug, Clone)]
pub struct ExplicitSt {
    pub nodes: Vec<StNode>,
}

impl ExplicitSt {
    pub fn is_leaf(&self, v: u32) -> bool {
        self.nodes[v as usize].row != 0
    }

    /// Preorder traversal order (ids into `nodes`), matching the BP numbering.
    pub fn preorder(&self) -> Vec<u32> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![0u32];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &c in self.nodes[v as usize].children.iter().rev() {
                stack.push(c);
            }
        }
        order
    }

    pub fn parens(&self) -> Vec<bool> {
        let mut bits = Vec::with_capacity(2 * self.nodes.len());
        let mut stack = vec![(0u32, false)];
        while let Some((v, done)) = stack.pop() {
            if done {
                bits.push(false);
                continue;
            }
            bits.push(true);
            stack.push((v, true));
            for &c in self.nodes[v as usize].children.iter().rev() {
                stack.push((c, false));
            }
        }
        bits
    }
}

/// Builds the suffix tree from the suffix array and lcp array with the usual
/// stack sweep; leaves are attached in row order so children come out in
/// lexicographic order.
pub fn explicit_suffix_tree(n: usize, sa: &[u32], lcp: &[u32]) -> ExplicitSt {
    let mut nodes = vec![StNode { parent: 0, children: Vec::new(), depth: 0, lo: 0, hi: 0, row: 0 }];
    let mut stack: Vec<u32> = vec![0];
    for row in 1..=n {
        let l = if row == 1 { 0 } else { lcp[row - 1] as usize };
        let mut last_popped: Option<u32> = None;
        while nodes[*stack.last().unwrap() as usize].depth as usize > l {
            last_popped = stack.pop();
        }
        let top = *stack.last().unwrap();
        if (nodes[top as usize].depth as usize) < l {
            // split: new internal node between top and the popped child
            let child = last_popped.expect("lcp rises only after a pop");
            let u = nodes.len() as u32;
            nodes.push(StNode {
                parent: top,
                children: vec![child],
                depth: l as u32,
                lo: 0,
                hi: 0,
                row: 0,
            });
            let pos = nodes[top as usize]
                .children
                .iter()
                .rposition(|&c| c == child)
                .expect("popped node is the last child");
            nodes[top as usize].children[pos] = u;
            nodes[child as usize].parent = u;
            stack.push(u);
        }
        let parent = *stack.last().unwrap();
        let leaf = nodes.len() as u32;
        let depth = n as u32 - sa[row - 1] + 1;
        nodes.push(StNode {
            parent,
            children: Vec::new(),
            depth,
            lo: row as u32,
            hi: row as u32,
            row: row as u32,
        });
        nodes[parent as usize].children.push(leaf);
        stack.push(leaf);
    }
    // intervals bottom-up over reverse preorder
    let mut st = ExplicitSt { nodes };
    let order = st.preorder();
    for &v in order.iter().rev() {
        if !st.is_leaf(v) {
            let first = *st.nodes[v as usize].children.first().expect("internal node has children");
            let last = *st.nodes[v as usize].children.last().unwrap();
            st.nodes[v as usize].lo = st.nodes[first as usize].lo;
            st.nodes[v as usize].hi = st.nodes[last as usize].hi;
        }
    }
    st
}

pub(super) fn next_leaf_rows(sa: &[u32], isa: &[u32]) -> Vec<u32> {
    let n = sa.len();
    sa.iter()
        .map(|&pos| if pos as usize == n { 0 } else { isa[pos as usize] })
        .collect()
}

fn count_used_symbols(text: &Text) -> usize {
    let mut seen = [false; 256];
    for &s in &text.symbols()[..text.len() - 1] {
        seen[s as usize] = true;
    }
    seen.iter().filter(|&&b| b).count()
}

fn build_st_topology(
    explicit: &ExplicitSt,
    sa: &[u32],
    isa: &[u32],
    bwt: &CharSeq,
    sigma_used: usize,
) -> StTopology {
    let mut shape = BpTree::from_parens(&explicit.parens()).expect("DFS emits balanced parens");
    let t = shape.node_count();
    let mut marks = vec![false; t];
    for v in 1..=t as u32 {
        if v == 1 {
            marks[0] = sigma_used >= 2;
        } else if !shape.is_leaf(v) {
            let lo = shape.leftmost_leaf(v);
            let hi = shape.rightmost_leaf(v);
            marks[v as usize - 1] = !bwt.range_is_uniform(lo, hi);
        }
    }
    shape.attach_marks(BitVec::from_bools(&marks)).expect("lengths match");
    StTopology { shape, next_leaf_row: next_leaf_rows(sa, isa) }
}

/// Builds the left-maximal-substring trie for one direction from the opposite
/// direction's suffix tree: trie nodes are that tree's internal nodes, the
/// trie parent is the suffix link, and the edge symbol is the first character
/// of the internal node's label.
fn build_slt_topology(opposite_st: &StTopology, opposite_bwt: &CharSeq) -> SltTopology {
    let shape = &opposite_st.shape;
    let t = shape.node_count();
    // first symbol of each row's suffix, from the partial counts
    let n = shape.leaf_count();
    let mut first_sym = vec![0u8; n + 1];
    for c in 0..=opposite_bwt.sigma() {
        let lo = opposite_bwt.partial_count(c);
        let hi = if c == opposite_bwt.sigma() { n } else { opposite_bwt.partial_count(c + 1) };
        for row in lo + 1..=hi {
            first_sym[row] = c;
        }
    }

    let mut internal: Vec<u32> = (1..=t as u32).filter(|&v| !shape.is_leaf(v)).collect();
    internal.sort_unstable();
    let index_of: std::collections::HashMap<u32, u32> =
        internal.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let m = internal.len();
    let mut children: Vec<Vec<(u8, u32)>> = vec![Vec::new(); m];
    for (i, &v) in internal.iter().enumerate() {
        if v == 1 {
            continue;
        }
        let parent_st = opposite_st.suffix_link(v).expect("internal non-root has a suffix link");
        debug_assert!(!shape.is_leaf(parent_st));
        let edge = first_sym[shape.leftmost_leaf(v)];
        children[index_of[&parent_st] as usize].push((edge, i as u32));
    }
    for list in &mut children {
        list.sort_unstable();
    }

    // DFS over trie indices; record which st node lands at each trie preorder slot
    let mut bits = Vec::with_capacity(2 * m);
    let mut preorder_st: Vec<u32> = Vec::with_capacity(m);
    let root_idx = index_of[&1];
    let mut stack: Vec<(u32, bool)> = vec![(root_idx, false)];
    while let Some((idx, done)) = stack.pop() {
        if done {
            bits.push(false);
            continue;
        }
        bits.push(true);
        preorder_st.push(internal[idx as usize]);
        stack.push((idx, true));
        for &(_, c) in children[idx as usize].iter().rev() {
            stack.push((c, false));
        }
    }
    let mut trie = BpTree::from_parens(&bits).expect("DFS emits balanced parens");
    let marks: Vec<bool> = preorder_st.iter().map(|&v| shape.is_marked(v)).collect();
    trie.attach_marks(BitVec::from_bools(&marks)).expect("lengths match");
    SltTopology { shape: trie }
}

pub(super) fn build_pair(text: &Text, ss: &SuffixStructures) -> TopologyPair {
    let n = text.len();
    let sigma_used = count_used_symbols(text);
    let rev_symbols = text.reversed_symbols();

    let fwd_lcp = lcp_array(text.symbols(), &ss.sa, &ss.isa);
    let bwd_lcp = lcp_array(&rev_symbols, &ss.rev_sa, &ss.rev_isa);
    let fwd_explicit = explicit_suffix_tree(n, &ss.sa, &fwd_lcp);
    let bwd_explicit = explicit_suffix_tree(n, &ss.rev_sa, &bwd_lcp);

    let fwd_st = build_st_topology(&fwd_explicit, &ss.sa, &ss.isa, &ss.bwt, sigma_used);
    let bwd_st = build_st_topology(&bwd_explicit, &ss.rev_sa, &ss.rev_isa, &ss.rev_bwt, sigma_used);

    // the trie over left-maximal substrings of T lives on rev-ST's internal nodes
    let fwd_slt = build_slt_topology(&bwd_st, &ss.rev_bwt);
    let bwd_slt = build_slt_topology(&fwd_st, &ss.bwt);

    TopologyPair {
        fwd: DirectedTopology { st: fwd_st, slt: fwd_slt },
        bwd: DirectedTopology { st: bwd_st, slt: bwd_slt },
    }
}
