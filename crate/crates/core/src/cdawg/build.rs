use super::{Cdawg, CdawgArc, CdawgIndex, CdawgNode, MemberInfo, RlBwt, SlNext, WeinerArc, NO_CLASS};
use crate::succinct::CharSeq;
use crate::textcore::{SuffixStructures, Text};
use crate::topology::{explicit_suffix_tree, lcp_array, DirectedTopology, ExplicitSt};

struct DirectionInput<'a> {
    symbols: &'a [u8],
    sa: &'a [u32],
    isa: &'a [u32],
    bwt: &'a CharSeq,
}

/// Build artifacts kept around until the affix links can be cross-filled.
struct Built {
    cdawg: Cdawg,
    // class of every explicit suffix-tree node (leaves map to the sink)
    class_of: Vec<u32>,
    // explicit node at each preorder position (preorder rank - 1)
    by_bp: Vec<u32>,
}

pub(super) fn build_index(text: &Text, ss: &SuffixStructures, pair: &crate::topology::TopologyPair) -> CdawgIndex {
    let rev_symbols = text.reversed_symbols();
    let sigma_used = {
        let mut seen = [false; 256];
        for &s in &text.symbols()[..text.len() - 1] {
            seen[s as usize] = true;
        }
        seen.iter().filter(|&&b| b).count()
    };
    let fwd_in = DirectionInput { symbols: text.symbols(), sa: &ss.sa, isa: &ss.isa, bwt: &ss.bwt };
    let bwd_in =
        DirectionInput { symbols: &rev_symbols, sa: &ss.rev_sa, isa: &ss.rev_isa, bwt: &ss.rev_bwt };
    let mut fwd = build_one(&fwd_in, sigma_used, &pair.fwd);
    let mut bwd = build_one(&bwd_in, sigma_used, &pair.bwd);

    fill_affix(&mut fwd, &bwd, &fwd_in, &bwd_in, &pair.bwd);
    fill_affix(&mut bwd, &fwd, &bwd_in, &fwd_in, &pair.fwd);
    debug_assert!(affix_bijective(&fwd.cdawg, &bwd.cdawg));

    CdawgIndex {
        fwd_rlbwt: RlBwt::from_charseq(&ss.bwt),
        bwd_rlbwt: RlBwt::from_charseq(&ss.rev_bwt),
        fwd: fwd.cdawg,
        bwd: bwd.cdawg,
    }
}

fn build_one(input: &DirectionInput<'_>, sigma_used: usize, topo: &DirectedTopology) -> Built {
    let n = input.symbols.len();
    let lcp = lcp_array(input.symbols, input.sa, input.isa);
    let explicit = explicit_suffix_tree(n, input.sa, &lcp);
    let t = explicit.nodes.len();
    debug_assert_eq!(t, topo.st.shape.node_count(), "topology built from the same tree");

    let order = explicit.preorder();
    let mut bp_rank = vec![0u32; t];
    for (pos, &v) in order.iter().enumerate() {
        bp_rank[v as usize] = pos as u32;
    }

    // maximal-repeat marks: internal nodes with two distinct preceding symbols;
    // the root counts iff the text uses two symbols
    let mut marked = vec![false; t];
    for &v in &order {
        if v == 0 {
            marked[0] = sigma_used >= 2;
        } else if !explicit.is_leaf(v) {
            let node = &explicit.nodes[v as usize];
            marked[v as usize] = !input.bwt.range_is_uniform(node.lo as usize, node.hi as usize);
        }
    }

    // suffix links through the topology's shifted-leaf machinery, mapped back
    // and forth via the shared preorder
    let mut leaf_of_row = vec![0u32; n + 1];
    for &v in &order {
        let node = &explicit.nodes[v as usize];
        if node.row != 0 {
            leaf_of_row[node.row as usize] = v;
        }
    }
    let mut sl_of = vec![0u32; t];
    for v in 1..t as u32 {
        let bp = bp_rank[v as usize] + 1;
        sl_of[v as usize] = match topo.st.suffix_link(bp) {
            Ok(target) => order[target as usize - 1],
            Err(_) => 0, // terminator leaf: never dereferenced
        };
    }

    // classes: the root, then marked non-root nodes in preorder, then the sink
    let mut class_of = vec![NO_CLASS; t];
    let mut repeat_node: Vec<u32> = vec![0];
    class_of[0] = 0;
    for &v in &order {
        if v != 0 && marked[v as usize] {
            class_of[v as usize] = repeat_node.len() as u32;
            repeat_node.push(v);
        }
    }
    let sink = repeat_node.len() as u32;
    for &v in &order {
        if explicit.is_leaf(v) {
            class_of[v as usize] = sink;
        }
    }
    // sweep each class's suffix-link chain while the frequency is preserved
    let mut chain_members: Vec<Vec<u32>> = repeat_node.iter().map(|&v| vec![v]).collect();
    for class in 0..repeat_node.len() {
        let top = repeat_node[class];
        let f = width(&explicit, top);
        let mut cur = top;
        loop {
            if cur == 0 {
                break; // the root has no suffix link
            }
            let next = sl_of[cur as usize];
            if marked[next as usize] || width(&explicit, next) != f {
                break;
            }
            debug_assert_eq!(class_of[next as usize], NO_CLASS, "chains are disjoint");
            class_of[next as usize] = class as u32;
            chain_members[class].push(next);
            cur = next;
        }
    }
    debug_assert!(class_of.iter().all(|&c| c != NO_CLASS), "every node falls in a class");

    // lowest marked ancestor-or-self per node, in preorder
    let mut lma = vec![NO_CLASS; t];
    for &v in &order {
        let vi = v as usize;
        if marked[vi] {
            lma[vi] = class_of[vi];
        } else if v != 0 {
            lma[vi] = lma[explicit.nodes[vi].parent as usize];
        }
    }

    let class_count = repeat_node.len() + 1; // + sink
    let mut nodes = Vec::with_capacity(class_count);
    for class in 0..repeat_node.len() {
        let top = repeat_node[class];
        let members = &chain_members[class];
        let top_node = &explicit.nodes[top as usize];
        let mut arcs = Vec::with_capacity(top_node.children.len());
        for &child in &top_node.children {
            let cn = &explicit.nodes[child as usize];
            let pos = input.sa[cn.lo as usize - 1] as usize + top_node.depth as usize;
            arcs.push(CdawgArc {
                ch: input.symbols[pos - 1],
                right: cn.depth - top_node.depth,
                target: class_of[child as usize],
                child_lo: cn.lo,
                child_hi: cn.hi,
            });
        }
        debug_assert!(arcs.windows(2).all(|w| w[0].ch < w[1].ch), "children in symbol order");

        let mut weiner = Vec::new();
        for c in input.bwt.distinct_in_range(top_node.lo as usize, top_node.hi as usize) {
            if c == 0 {
                continue;
            }
            let lo = input.bwt.partial_count(c)
                + input.bwt.rank(c, top_node.lo as usize - 1).unwrap()
                + 1;
            let hi = input.bwt.partial_count(c) + input.bwt.rank(c, top_node.hi as usize).unwrap();
            debug_assert!(lo <= hi);
            let locus = locus_of(&explicit, &leaf_of_row, lo, hi);
            weiner.push(WeinerArc {
                ch: c,
                target: class_of[locus as usize],
                target_len: explicit.nodes[locus as usize].depth,
            });
        }

        let last = *members.last().unwrap();
        let sl_next = if last == 0 {
            None
        } else {
            let s = sl_of[last as usize];
            let sn = &explicit.nodes[s as usize];
            Some(SlNext { class: class_of[s as usize], len: sn.depth, lo: sn.lo, hi: sn.hi })
        };

        let member_infos = members.iter().map(|&m| member_info(&explicit, &class_of, &lma, m)).collect();
        nodes.push(CdawgNode {
            length: top_node.depth,
            size: members.len() as u32,
            first: top_node.lo,
            last: top_node.hi,
            arcs,
            weiner,
            suffix_link: NO_CLASS, // filled below
            sl_next,
            affix: NO_CLASS, // filled by the cross pass
            members: member_infos,
        });
    }

    // sink: all leaves merged; member index is n - suffix length
    {
        let mut members = Vec::with_capacity(n);
        for len in (1..=n).rev() {
            let pos = n - len + 1;
            let leaf = leaf_of_row[input.isa[pos - 1] as usize];
            members.push(member_info(&explicit, &class_of, &lma, leaf));
        }
        nodes.push(CdawgNode {
            length: n as u32,
            size: n as u32,
            first: 0,
            last: 0,
            arcs: Vec::new(),
            weiner: Vec::new(),
            suffix_link: NO_CLASS,
            sl_next: None,
            affix: NO_CLASS,
            members,
        });
    }

    // longest proper maximal-repeat suffix per class: follow the suffix link
    // of the shortest member into the next class, memoized along the chain
    let mut g = vec![NO_CLASS; class_count];
    let mut g_done = vec![false; class_count];
    for start in 0..repeat_node.len() {
        if g_done[start] {
            continue;
        }
        let mut trail = Vec::new();
        let mut cur = start;
        let result = loop {
            if g_done[cur] {
                break g[cur];
            }
            trail.push(cur);
            let last = *chain_members[cur].last().unwrap();
            if last == 0 {
                break NO_CLASS;
            }
            let s = sl_of[last as usize];
            if marked[s as usize] {
                break class_of[s as usize];
            }
            cur = class_of[s as usize] as usize;
        };
        for c in trail {
            g[c] = result;
            g_done[c] = true;
        }
    }
    for (class, node) in nodes.iter_mut().enumerate().take(repeat_node.len()) {
        node.suffix_link = g[class];
    }

    // maximal-repeat tree over classes: parent = class of the lowest marked
    // strict ancestor of the representative; the root class anchors the tree
    let synthetic_root = !marked[0];
    let mut mr_parent = vec![NO_CLASS; class_count];
    for class in 1..repeat_node.len() {
        let top = repeat_node[class];
        let p = explicit.nodes[top as usize].parent;
        let anc = lma[p as usize];
        mr_parent[class] = if anc == NO_CLASS { 0 } else { anc };
    }
    Built {
        cdawg: Cdawg::from_parts(nodes, sink, n as u32, synthetic_root, mr_parent),
        class_of,
        by_bp: order,
    }
}

fn width(explicit: &ExplicitSt, v: u32) -> u32 {
    let n = &explicit.nodes[v as usize];
    n.hi - n.lo + 1
}

fn member_info(explicit: &ExplicitSt, class_of: &[u32], lma: &[u32], v: u32) -> MemberInfo {
    if v == 0 {
        return MemberInfo {
            parent_class: NO_CLASS,
            parent_len: 0,
            parent_lo: 0,
            parent_hi: 0,
            lma_class: lma[0],
        };
    }
    let p = explicit.nodes[v as usize].parent;
    let pn = &explicit.nodes[p as usize];
    MemberInfo {
        parent_class: class_of[p as usize],
        parent_len: pn.depth,
        parent_lo: pn.lo,
        parent_hi: pn.hi,
        lma_class: lma[v as usize],
    }
}

fn locus_of(explicit: &ExplicitSt, leaf_of_row: &[u32], lo: usize, hi: usize) -> u32 {
    // walk up from one boundary leaf until the node interval covers [lo..hi]
    let mut v = leaf_of_row[lo];
    loop {
        let node = &explicit.nodes[v as usize];
        if node.lo as usize <= lo && hi <= node.hi as usize {
            return v;
        }
        v = node.parent;
    }
}

/// Affix links: for every class of `this`, locate the reverse of its label in
/// the other direction via a text position, then resolve the marked node at
/// the exact depth with the topology machinery.
fn fill_affix(
    this: &mut Built,
    other: &Built,
    input: &DirectionInput<'_>,
    other_input: &DirectionInput<'_>,
    other_topo: &DirectedTopology,
) {
    let n = input.symbols.len();
    let sink = this.cdawg.sink;
    let class_count = this.cdawg.nodes.len();
    for class in 0..class_count as u32 {
        if class == sink {
            this.cdawg.nodes[class as usize].affix = other.cdawg.sink;
            continue;
        }
        let node = &this.cdawg.nodes[class as usize];
        let len = node.length as usize;
        if len == 0 {
            this.cdawg.nodes[class as usize].affix = 0;
            continue;
        }
        // one occurrence of the label, mirrored into the other direction
        let q = input.sa[node.first as usize - 1] as usize;
        let p = n - q - len + 1;
        let row = other_input.isa[p - 1] as usize;
        let leaf = other_topo.st.shape.select_leaf(row).expect("row in range");
        let anchor = other_topo
            .st
            .shape
            .lowest_marked_ancestor(leaf)
            .expect("the mirrored label is a maximal repeat");
        let y = other_topo.shallowest_marked_at_least(anchor, len).expect("depth reachable");
        debug_assert_eq!(other_topo.max_rep_length(y).unwrap(), len);
        let y_explicit = other.by_bp[y as usize - 1];
        let target = other.class_of[y_explicit as usize];
        debug_assert_eq!(other.cdawg.nodes[target as usize].length as usize, len);
        this.cdawg.nodes[class as usize].affix = target;
    }
}

fn affix_bijective(fwd: &Cdawg, bwd: &Cdawg) -> bool {
    fwd.nodes.iter().enumerate().all(|(i, v)| bwd.nodes[v.affix as usize].affix as usize == i)
        && bwd.nodes.iter().enumerate().all(|(j, v)| fwd.nodes[v.affix as usize].affix as usize == j)
}
