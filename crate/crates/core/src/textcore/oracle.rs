//! Brute-force oracles, kept deliberately independent of the production
//! structures: suffixes are sorted by direct comparison, intervals come from
//! binary search, and extension sets from scanning occurrence lists.

use super::Interval;
use std::collections::BTreeSet;

/// Sorted-suffix view of one direction of the text.
#[derive(Debug, Clone)]
pub struct SuffixView {
    symbols: Vec<u8>, // T# with the trailing 0
    rows: Vec<u32>,   // 1-based positions in lexicographic suffix order
}

impl SuffixView {
    pub fn new(symbols_with_terminator: Vec<u8>) -> Self {
        let n = symbols_with_terminator.len();
        let mut rows: Vec<u32> = (1..=n as u32).collect();
        rows.sort_by(|&a, &b| {
            symbols_with_terminator[a as usize - 1..].cmp(&symbols_with_terminator[b as usize - 1..])
        });
        SuffixView { symbols: symbols_with_terminator, rows }
    }

    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    fn suffix(&self, pos: u32) -> &[u8] {
        &self.symbols[pos as usize - 1..]
    }

    /// Maximal row range of suffixes having `w` as a prefix.
    pub fn interval(&self, w: &[u8]) -> Option<Interval> {
        let lo = self.rows.partition_point(|&p| self.suffix(p) < w);
        let hi = self.rows.partition_point(|&p| {
            let s = self.suffix(p);
            s.len() >= w.len() && &s[..w.len()] <= w || s < w
        });
        if lo < hi {
            Some(Interval::new(lo + 1, hi))
        } else {
            None
        }
    }

    /// Narrows `iv` (rows matching some prefix `u`) to rows whose suffix has
    /// symbol `c` at 0-based offset `|u|`.
    pub fn refine(&self, iv: Interval, offset: usize, c: u8) -> Option<Interval> {
        let at = |row: usize| -> Option<u8> {
            let s = self.suffix(self.rows[row - 1]);
            s.get(offset).copied()
        };
        // rows in iv are sorted with missing/short suffixes first, then by symbol
        let key = |row: usize| at(row).map(|x| x as i32).unwrap_or(-1);
        let lo = iv.lo() + partition(iv.lo(), iv.hi(), |r| key(r) < c as i32);
        let hi = iv.lo() + partition(iv.lo(), iv.hi(), |r| key(r) <= c as i32);
        if lo < hi {
            Some(Interval::new(lo, hi - 1))
        } else {
            None
        }
    }

    /// Occurrence positions (1-based) of `w`.
    pub fn occurrences(&self, w: &[u8]) -> Vec<usize> {
        match self.interval(w) {
            None => Vec::new(),
            Some(iv) => {
                let mut occ: Vec<usize> =
                    self.rows[iv.lo() - 1..iv.hi()].iter().map(|&p| p as usize).collect();
                occ.sort_unstable();
                occ
            }
        }
    }

    /// Distinct symbols following `w`; the terminator when `w` ends the text.
    pub fn right_extensions(&self, w: &[u8]) -> BTreeSet<u8> {
        let mut out = BTreeSet::new();
        for p in self.occurrences(w) {
            if let Some(&c) = self.symbols.get(p - 1 + w.len()) {
                out.insert(c);
            }
        }
        out
    }

    /// Distinct symbols preceding `w`, the terminator standing in for the
    /// text start (matching the BWT wraparound row).
    pub fn left_extensions(&self, w: &[u8]) -> BTreeSet<u8> {
        let mut out = BTreeSet::new();
        for p in self.occurrences(w) {
            out.insert(if p == 1 { 0 } else { self.symbols[p - 2] });
        }
        out
    }
}

fn partition(lo: usize, hi: usize, pred: impl Fn(usize) -> bool) -> usize {
    // first offset in [lo..=hi] where pred flips to false
    let mut a = lo;
    let mut b = hi + 1;
    while a < b {
        let mid = (a + b) / 2;
        if pred(mid) {
            a = mid + 1;
        } else {
            b = mid;
        }
    }
    a - lo
}

/// Both directions of the brute-force machinery for one text.
#[derive(Debug, Clone)]
pub struct Oracle {
    pub fwd: SuffixView,
    pub rev: SuffixView,
    sigma_used: usize,
}

impl Oracle {
    /// `symbols` is `T#` including the trailing terminator.
    pub fn new(symbols: &[u8]) -> Self {
        let n = symbols.len();
        let mut rev: Vec<u8> = symbols[..n - 1].iter().rev().copied().collect();
        rev.push(0);
        let mut seen = BTreeSet::new();
        for &s in &symbols[..n - 1] {
            seen.insert(s);
        }
        Oracle {
            fwd: SuffixView::new(symbols.to_vec()),
            rev: SuffixView::new(rev),
            sigma_used: seen.len(),
        }
    }

    pub fn n(&self) -> usize {
        self.fwd.n()
    }

    /// Oracle descriptor of `w`: forward interval, reverse interval, length.
    pub fn descriptor(&self, w: &[u8]) -> Option<(Interval, Interval, usize)> {
        let f = self.fwd.interval(w)?;
        let rw: Vec<u8> = w.iter().rev().copied().collect();
        let r = self.rev.interval(&rw)?;
        Some((f, r, w.len()))
    }

    pub fn is_right_maximal(&self, w: &[u8]) -> bool {
        self.fwd.right_extensions(w).len() > 1
    }

    pub fn is_left_maximal(&self, w: &[u8]) -> bool {
        self.fwd.left_extensions(w).len() > 1
    }

    /// All maximal repeats, by exhaustive enumeration of right-maximal
    /// intervals. The empty string counts iff the text has two distinct
    /// symbols (and, vacuously then, two distinct preceding symbols).
    pub fn max_reps(&self) -> BTreeSet<Vec<u8>> {
        let mut out = BTreeSet::new();
        if self.sigma_used >= 2 {
            out.insert(Vec::new());
        }
        for (depth, lo, _hi) in right_maximal_intervals(&self.fwd) {
            let w = &self.fwd.symbols
                [self.fwd.rows[lo - 1] as usize - 1..self.fwd.rows[lo - 1] as usize - 1 + depth];
            if self.fwd.left_extensions(w).len() > 1 {
                out.insert(w.to_vec());
            }
        }
        out
    }

    /// Matching statistics of `s` against the text, by definition.
    pub fn ms(&self, s: &[u8]) -> Vec<usize> {
        let text = &self.fwd.symbols[..self.n() - 1];
        let mut out = Vec::with_capacity(s.len());
        for i in 0..s.len() {
            let mut best = 0usize;
            for p in 0..text.len() {
                let mut j = 0usize;
                while i + j < s.len() && p + j < text.len() && s[i + j] == text[p + j] {
                    j += 1;
                }
                best = best.max(j);
            }
            out.push(best);
        }
        out
    }
}

/// `(string depth, lo, hi)` for every right-maximal substring: internal
/// lcp-intervals of the sorted suffix list, root excluded, plus the root's
/// own interval when the empty string is right-maximal.
pub fn right_maximal_intervals(view: &SuffixView) -> Vec<(usize, usize, usize)> {
    let n = view.n();
    let lcp_of = |a: u32, b: u32| {
        view.suffix(a).iter().zip(view.suffix(b)).take_while(|(x, y)| x == y).count()
    };
    let mut lcp = vec![0usize; n + 1]; // lcp[i] between rows i-1 and i, 2-based
    for i in 2..=n {
        lcp[i] = lcp_of(view.rows[i - 2], view.rows[i - 1]);
    }
    let mut out = Vec::new();
    let mut stack: Vec<(usize, usize)> = vec![(0, 1)]; // (depth, leftmost row)
    for i in 2..=n + 1 {
        let l = if i <= n { lcp[i] } else { 0 };
        let mut left = i - 1;
        while stack.last().unwrap().0 > l {
            let (d, lo) = stack.pop().unwrap();
            out.push((d, lo, i - 1));
            left = lo;
        }
        if stack.last().unwrap().0 < l {
            stack.push((l, left));
        }
    }
    out
}

/// Distinct k-mer counts over `symbols` (no terminator windows).
pub fn kmer_counts(symbols_without_terminator: &[u8], k: usize) -> std::collections::BTreeMap<Vec<u8>, usize> {
    let mut map = std::collections::BTreeMap::new();
    if k == 0 || k > symbols_without_terminator.len() {
        return map;
    }
    for w in symbols_without_terminator.windows(k) {
        *map.entry(w.to_vec()).or_insert(0) += 1;
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    fn banana() -> Oracle {
        // b a n a n a -> 2 1 3 1 3 1 0
        Oracle::new(&[2, 1, 3, 1, 3, 1, 0])
    }

    #[test]
    fn interval_examples() {
        let o = banana();
        assert_eq!(o.fwd.interval(&[1, 3, 1]), Some(Interval::new(3, 4))); // ana
        assert_eq!(o.fwd.interval(&[1]), Some(Interval::new(2, 4))); // a
        assert_eq!(o.fwd.interval(&[]), Some(Interval::new(1, 7)));
        assert_eq!(o.fwd.interval(&[3, 3]), None); // nn
    }

    #[test]
    fn max_reps_banana() {
        let o = banana();
        let reps = o.max_reps();
        let expect: BTreeSet<Vec<u8>> =
            [vec![], vec![1], vec![1, 3, 1]].into_iter().collect();
        assert_eq!(reps, expect); // ε, a, ana
    }

    #[test]
    fn max_reps_all_distinct() {
        // ab: every symbol unique; only ε qualifies under the two-symbol rule
        let o = Oracle::new(&[1, 2, 0]);
        let reps = o.max_reps();
        assert_eq!(reps.len(), 1);
        assert!(reps.contains(&Vec::new()));
        // single-symbol alphabet: ε excluded
        let o = Oracle::new(&[1, 0]);
        assert!(o.max_reps().is_empty());
    }

    #[test]
    fn ms_examples() {
        let o = banana();
        assert_eq!(o.ms(&[2, 1, 3]), vec![3, 2, 1]); // ban
        // nab: "na" occurs, "ab" does not, "b" occurs
        assert_eq!(o.ms(&[3, 1, 2]), vec![2, 1, 1]);
        assert_eq!(o.ms(&[9, 9, 9]), vec![0, 0, 0]);
    }

    #[test]
    fn extension_sets() {
        let o = banana();
        // ana: right {n,#}, left {b,n}
        let r = o.fwd.right_extensions(&[1, 3, 1]);
        assert_eq!(r.into_iter().collect::<Vec<_>>(), vec![0, 3]);
        let l = o.fwd.left_extensions(&[1, 3, 1]);
        assert_eq!(l.into_iter().collect::<Vec<_>>(), vec![2, 3]);
        // prefix of T contributes the wraparound terminator on the left
        let l = o.fwd.left_extensions(&[2]);
        assert_eq!(l.into_iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn refine_matches_interval() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let len = rng.gen_range(2..80);
            let sigma = rng.gen_range(1..4) as u8;
            let mut syms: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=sigma)).collect();
            syms.push(0);
            let view = SuffixView::new(syms.clone());
            for start in 0..len {
                let mut iv = Interval::new(1, len + 1);
                for j in start..len.min(start + 12) {
                    let w = &syms[start..=j];
                    let direct = view.interval(w);
                    iv = match view.refine(iv, j - start, syms[j]) {
                        Some(next) => {
                            assert_eq!(Some(next), direct);
                            next
                        }
                        None => {
                            assert_eq!(direct, None);
                            break;
                        }
                    };
                }
            }
        }
    }

    #[test]
    fn interval_width_counts_occurrences() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(59);
        for _ in 0..15 {
            let len = rng.gen_range(2..120);
            let sigma = rng.gen_range(1..4) as u8;
            let mut syms: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=sigma)).collect();
            syms.push(0);
            let o = Oracle::new(&syms);
            // right-maximal substrings stay below n
            assert!(right_maximal_intervals(&o.fwd).len() <= len);
            for _ in 0..40 {
                let i = rng.gen_range(0..len);
                let j = rng.gen_range(i..len);
                let w = &syms[i..=j];
                let by_scan =
                    (0..len).filter(|&p| syms[p..].starts_with(w)).count();
                let width = o.fwd.interval(w).map(|iv| iv.width()).unwrap_or(0);
                assert_eq!(width, by_scan);
            }
        }
    }

    #[test]
    fn kmer_counter() {
        let counts = kmer_counts(&[2, 1, 3, 1, 3, 1], 2);
        assert_eq!(counts.len(), 3); // an, ba, na
        assert_eq!(counts.values().filter(|&&c| c >= 2).count(), 2); // an, na
    }

    #[test]
    fn interleaved_cg_ga_max_reps() {
        // CGCGCGAGAGCGAGA with A=1, C=2, G=3
        let t: Vec<u8> = [2, 3, 2, 3, 2, 3, 1, 3, 1, 3, 2, 3, 1, 3, 1, 0].to_vec();
        let o = Oracle::new(&t);
        let reps = o.max_reps();
        let expect: BTreeSet<Vec<u8>> = [
            vec![],
            vec![3],          // G
            vec![2, 3],       // CG
            vec![3, 1],       // GA
            vec![2, 3, 2, 3], // CGCG
            vec![3, 1, 3],    // GAG
            vec![3, 2, 3],    // GCG (positions 2, 4, 10)
            vec![3, 2, 3, 1, 3, 1], // GCGAGA
        ]
        .into_iter()
        .collect();
        assert_eq!(reps, expect);
        // these sets are reversal-closed in the mirrored text
        let rev: Vec<u8> =
            t[..t.len() - 1].iter().rev().copied().chain(std::iter::once(0)).collect();
        let rev_o = Oracle::new(&rev);
        let mirrored: BTreeSet<Vec<u8>> =
            reps.iter().map(|w| w.iter().rev().copied().collect()).collect();
        assert_eq!(rev_o.max_reps(), mirrored);
    }
}
