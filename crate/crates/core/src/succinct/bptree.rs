use super::BitVec;
use crate::{Error, Result};

/// Preorder rank of a node, 1-based; the root is node 1.
pub type NodeId = u32;

/// Ordinal tree stored as a balanced-parentheses sequence, with navigation,
/// leaf, level-ancestor and marked-ancestor queries.
///
/// Depth is counted in edges from the root (root depth 0), so in a suffix-link
/// trie the depth of a node equals the length of its label. Level-ancestor and
/// lca run in O(log depth) via jump pointers; the constant-time structures they
/// stand in for are interchangeable behind this interface.
#[derive(Debug, Clone)]
pub struct BpTree {
    parens: BitVec,
    parent: Vec<NodeId>, // parent[v-1]; root points to 0
    depth: Vec<u32>,
    jump: Vec<Vec<NodeId>>, // jump[k][v-1] = 2^k-th ancestor, 0 when absent
    first_leaf: Vec<u32>,   // leaf rank of the first leaf under v
    last_leaf: Vec<u32>,
    leaves: Vec<NodeId>, // i-th leaf in preorder
    marks: Option<Marks>,
}

#[derive(Debug, Clone)]
struct Marks {
    bits: BitVec,
    // lowest marked ancestor-or-self, 0 when none
    lma: Vec<NodeId>,
}

impl BpTree {
    /// Builds from a balanced-parentheses bitstring, `true` = open.
    pub fn from_parens(bits: &[bool]) -> Result<Self> {
        if bits.is_empty() || bits.len() % 2 != 0 {
            return Err(Error::InvalidInput("unbalanced parentheses"));
        }
        let t = bits.len() / 2;
        let mut parent = vec![0u32; t];
        let mut depth = vec![0u32; t];
        let mut stack: Vec<u32> = Vec::new();
        let mut next_id = 0u32;
        let mut is_leaf = vec![true; t];
        for &b in bits {
            if b {
                next_id += 1;
                if next_id as usize > t {
                    return Err(Error::InvalidInput("unbalanced parentheses"));
                }
                let v = next_id;
                if let Some(&p) = stack.last() {
                    parent[v as usize - 1] = p;
                    depth[v as usize - 1] = depth[p as usize - 1] + 1;
                    is_leaf[p as usize - 1] = false;
                }
                stack.push(v);
            } else if stack.pop().is_none() {
                return Err(Error::InvalidInput("unbalanced parentheses"));
            }
        }
        if !stack.is_empty() || next_id as usize != t {
            return Err(Error::InvalidInput("unbalanced parentheses"));
        }

        let levels = (usize::BITS - t.leading_zeros()) as usize;
        let mut jump: Vec<Vec<NodeId>> = Vec::with_capacity(levels);
        jump.push(parent.clone());
        for k in 1..levels.max(1) {
            let prev = &jump[k - 1];
            let mut cur = vec![0u32; t];
            for v in 0..t {
                let half = prev[v];
                if half != 0 {
                    cur[v] = prev[half as usize - 1];
                }
            }
            jump.push(cur);
        }

        // Subtrees are contiguous preorder blocks, so leaf ranges come from the
        // last preorder id in each subtree plus prefix counts of leaves.
        let mut subtree_end = vec![0u32; t];
        {
            let mut stack: Vec<u32> = Vec::new();
            let mut seen = 0u32;
            for &b in bits {
                if b {
                    seen += 1;
                    stack.push(seen);
                } else {
                    let v = stack.pop().unwrap();
                    subtree_end[v as usize - 1] = seen;
                }
            }
        }
        let mut leaves = Vec::new();
        let mut leaves_upto = vec![0u32; t + 1]; // leaves with preorder <= v
        for v in 1..=t {
            leaves_upto[v] = leaves_upto[v - 1];
            if is_leaf[v - 1] {
                leaves.push(v as u32);
                leaves_upto[v] += 1;
            }
        }
        let mut first_leaf = vec![0u32; t];
        let mut last_leaf = vec![0u32; t];
        for v in 1..=t {
            first_leaf[v - 1] = leaves_upto[v - 1] + 1;
            last_leaf[v - 1] = leaves_upto[subtree_end[v - 1] as usize];
        }

        Ok(BpTree {
            parens: BitVec::from_bools(bits),
            parent,
            depth,
            jump,
            first_leaf,
            last_leaf,
            leaves,
            marks: None,
        })
    }

    /// Attaches a mark bitvector over preorder ranks.
    pub fn attach_marks(&mut self, bits: BitVec) -> Result<()> {
        if bits.len() != self.node_count() {
            return Err(Error::InvalidInput("mark bitvector length"));
        }
        let t = self.node_count();
        let mut lma = vec![0u32; t];
        for v in 1..=t as u32 {
            let slot = v as usize - 1;
            if bits.get(v as usize) {
                lma[slot] = v;
            } else if v > 1 {
                lma[slot] = lma[self.parent[slot] as usize - 1];
            }
        }
        self.marks = Some(Marks { bits, lma });
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn parens(&self) -> &BitVec {
        &self.parens
    }

    pub fn marks(&self) -> Option<&BitVec> {
        self.marks.as_ref().map(|m| &m.bits)
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.first_leaf[v as usize - 1] == self.last_leaf[v as usize - 1]
            && self.leaves[self.first_leaf[v as usize - 1] as usize - 1] == v
    }

    /// Depth in edges; the root has depth 0.
    pub fn depth(&self, v: NodeId) -> usize {
        self.depth[v as usize - 1] as usize
    }

    pub fn parent(&self, v: NodeId) -> Result<NodeId> {
        if v == 1 {
            return Err(Error::Root("parent"));
        }
        Ok(self.parent[v as usize - 1])
    }

    /// Ancestor of `v` at depth `d` (in edges); `level_ancestor(v, depth(v)) = v`.
    pub fn level_ancestor(&self, v: NodeId, d: usize) -> Result<NodeId> {
        let dv = self.depth(v);
        if d > dv {
            return Err(Error::OutOfRange("level ancestor depth"));
        }
        let mut up = dv - d;
        let mut cur = v;
        let mut k = 0;
        while up > 0 {
            if up & 1 == 1 {
                cur = self.jump[k][cur as usize - 1];
            }
            up >>= 1;
            k += 1;
        }
        Ok(cur)
    }

    pub fn lca(&self, v: NodeId, w: NodeId) -> NodeId {
        let (mut a, mut b) = (v, w);
        let (da, db) = (self.depth(a), self.depth(b));
        if da > db {
            a = self.level_ancestor(a, db).unwrap();
        } else if db > da {
            b = self.level_ancestor(b, da).unwrap();
        }
        if a == b {
            return a;
        }
        for k in (0..self.jump.len()).rev() {
            let (ja, jb) = (self.jump[k][a as usize - 1], self.jump[k][b as usize - 1]);
            if ja != jb {
                a = ja;
                b = jb;
            }
        }
        self.parent[a as usize - 1]
    }

    /// 1-based leaf rank of the first leaf in the subtree of `v`.
    pub fn leftmost_leaf(&self, v: NodeId) -> usize {
        self.first_leaf[v as usize - 1] as usize
    }

    /// 1-based leaf rank of the last leaf in the subtree of `v`.
    pub fn rightmost_leaf(&self, v: NodeId) -> usize {
        self.last_leaf[v as usize - 1] as usize
    }

    /// Preorder identifier of the i-th leaf.
    pub fn select_leaf(&self, i: usize) -> Result<NodeId> {
        if i == 0 || i > self.leaves.len() {
            return Err(Error::OutOfRange("leaf rank"));
        }
        Ok(self.leaves[i - 1])
    }

    pub fn is_marked(&self, v: NodeId) -> bool {
        self.marks.as_ref().map(|m| m.bits.get(v as usize)).unwrap_or(false)
    }

    /// Nearest marked node on the path from `v` to the root, inclusive of `v`.
    pub fn lowest_marked_ancestor(&self, v: NodeId) -> Result<NodeId> {
        let m = self.marks.as_ref().ok_or(Error::InvalidInput("no marks attached"))?;
        let a = m.lma[v as usize - 1];
        if a == 0 {
            return Err(Error::NotFound);
        }
        Ok(a)
    }

    /// Rank of `v` among marked nodes in preorder (1-based); `v` must be marked.
    pub fn marked_rank(&self, v: NodeId) -> Result<usize> {
        let m = self.marks.as_ref().ok_or(Error::InvalidInput("no marks attached"))?;
        if !m.bits.get(v as usize) {
            return Err(Error::Unmarked);
        }
        m.bits.rank1(v as usize)
    }

    /// The i-th marked node in preorder.
    pub fn select_marked(&self, i: usize) -> Result<NodeId> {
        let m = self.marks.as_ref().ok_or(Error::InvalidInput("no marks attached"))?;
        Ok(m.bits.select1(i)? as NodeId)
    }

    pub fn marked_count(&self) -> usize {
        self.marks.as_ref().map(|m| m.bits.count_ones()).unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parens(s: &str) -> Vec<bool> {
        s.bytes().map(|b| b == b'(').collect()
    }

    // "(()(()()))": preorder 1=root, 2=leaf, 3=internal, 4=leaf, 5=leaf
    fn sample() -> BpTree {
        BpTree::from_parens(&parens("(()(()()))")).unwrap()
    }

    #[test]
    fn spec_examples() {
        let t = sample();
        assert_eq!(t.lca(2, 5), 1);
        assert_eq!(t.level_ancestor(5, 1).unwrap(), 3);
        assert_eq!(t.leftmost_leaf(3), 2);
        assert_eq!(t.rightmost_leaf(3), 3);
    }

    #[test]
    fn navigation_basics() {
        let t = sample();
        assert_eq!(t.node_count(), 5);
        assert_eq!(t.leaf_count(), 3);
        assert!(t.parent(1).is_err());
        assert_eq!(t.parent(4).unwrap(), 3);
        assert_eq!(t.depth(1), 0);
        assert_eq!(t.depth(4), 2);
        assert_eq!(t.lca(4, 4), 4);
        assert_eq!(t.level_ancestor(4, 2).unwrap(), 4);
        assert!(t.level_ancestor(4, 3).is_err());
        assert_eq!(t.select_leaf(2).unwrap(), 4);
        assert!(t.select_leaf(4).is_err());
    }

    #[test]
    fn marked_ancestors() {
        let mut t = sample();
        t.attach_marks(BitVec::from_bools(&[true, false, true, false, false])).unwrap();
        assert_eq!(t.lowest_marked_ancestor(4).unwrap(), 3);
        assert_eq!(t.lowest_marked_ancestor(3).unwrap(), 3);
        assert_eq!(t.lowest_marked_ancestor(2).unwrap(), 1);
        assert_eq!(t.marked_rank(3).unwrap(), 2);
        assert_eq!(t.select_marked(2).unwrap(), 3);
        assert!(t.marked_rank(2).is_err());
    }

    /// Explicit child-list tree used as an oracle for the BP queries.
    struct NaiveTree {
        children: Vec<Vec<u32>>,
        parent: Vec<u32>,
    }

    impl NaiveTree {
        fn random(n: usize, rng: &mut impl rand::Rng) -> Self {
            let mut parent = vec![0u32; n];
            for v in 2..=n as u32 {
                parent[v as usize - 1] = rng.gen_range(1..v);
            }
            let mut children = vec![Vec::new(); n];
            for v in 2..=n as u32 {
                children[parent[v as usize - 1] as usize - 1].push(v);
            }
            NaiveTree { children, parent }
        }

        // preorder ids in the BP tree follow the child-list order used to emit parens
        fn to_parens(&self) -> Vec<bool> {
            let mut bits = Vec::new();
            let mut stack = vec![(1u32, false)];
            while let Some((v, done)) = stack.pop() {
                if done {
                    bits.push(false);
                } else {
                    bits.push(true);
                    stack.push((v, true));
                    for &c in self.children[v as usize - 1].iter().rev() {
                        stack.push((c, false));
                    }
                }
            }
            bits
        }

        // renumber: naive node -> preorder id
        fn preorder_map(&self) -> Vec<u32> {
            let n = self.parent.len();
            let mut map = vec![0u32; n + 1];
            let mut next = 0u32;
            let mut stack = vec![1u32];
            while let Some(v) = stack.pop() {
                next += 1;
                map[v as usize] = next;
                for &c in self.children[v as usize - 1].iter().rev() {
                    stack.push(c);
                }
            }
            map
        }

        fn depth(&self, mut v: u32) -> usize {
            let mut d = 0;
            while v != 1 {
                v = self.parent[v as usize - 1];
                d += 1;
            }
            d
        }

        fn ancestors(&self, mut v: u32) -> Vec<u32> {
            let mut path = vec![v];
            while v != 1 {
                v = self.parent[v as usize - 1];
                path.push(v);
            }
            path
        }

        fn lca(&self, v: u32, w: u32) -> u32 {
            let a = self.ancestors(v);
            let b = self.ancestors(w);
            for x in &a {
                if b.contains(x) {
                    return *x;
                }
            }
            1
        }
    }

    #[test]
    fn random_trees_match_naive_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..25 {
            let n = rng.gen_range(2..300);
            let naive = NaiveTree::random(n, &mut rng);
            let map = naive.preorder_map();
            let bp = BpTree::from_parens(&naive.to_parens()).unwrap();
            assert_eq!(bp.node_count(), n);
            // depth, parent, lca, level ancestor against the oracle
            for _ in 0..200 {
                let v = rng.gen_range(1..=n as u32);
                let w = rng.gen_range(1..=n as u32);
                assert_eq!(bp.depth(map[v as usize]), naive.depth(v));
                if v != 1 {
                    assert_eq!(
                        bp.parent(map[v as usize]).unwrap(),
                        map[naive.parent[v as usize - 1] as usize]
                    );
                }
                assert_eq!(bp.lca(map[v as usize], map[w as usize]), map[naive.lca(v, w) as usize]);
                let d = rng.gen_range(0..=naive.depth(v));
                let anc = naive.ancestors(v)[naive.depth(v) - d];
                assert_eq!(bp.level_ancestor(map[v as usize], d).unwrap(), map[anc as usize]);
                assert_eq!(bp.level_ancestor(map[v as usize], naive.depth(v)).unwrap(), map[v as usize]);
            }
            // leaf queries against a direct preorder walk
            let mut preorder_leaves = Vec::new();
            let mut stack = vec![1u32];
            while let Some(x) = stack.pop() {
                if naive.children[x as usize - 1].is_empty() {
                    preorder_leaves.push(map[x as usize]);
                }
                for &c in naive.children[x as usize - 1].iter().rev() {
                    stack.push(c);
                }
            }
            for (i, &leaf) in preorder_leaves.iter().enumerate() {
                assert_eq!(bp.select_leaf(i + 1).unwrap(), leaf);
            }
        }
    }
}
