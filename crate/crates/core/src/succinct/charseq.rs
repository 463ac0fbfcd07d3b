use crate::{Error, Result};

const BLOCK: usize = 128;

/// Sequence over a small alphabet `[0..sigma]` with per-symbol rank support and
/// the partial-count table `C` used by backward search.
///
/// Symbol 0 is the terminator and sorts first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSeq {
    symbols: Vec<u8>,
    sigma: u8,
    // rank_samples[c * blocks + b] = occurrences of c in the first b blocks
    rank_samples: Vec<u32>,
    blocks: usize,
    counts: Vec<u32>,
    partial: Vec<u32>,
}

impl CharSeq {
    /// Builds the rank structure; every symbol must be `<= sigma`.
    pub fn new(symbols: Vec<u8>, sigma: u8) -> Self {
        let n = symbols.len();
        let blocks = n / BLOCK + 1;
        let classes = sigma as usize + 1;
        let mut rank_samples = vec![0u32; classes * blocks];
        let mut running = vec![0u32; classes];
        for (i, &c) in symbols.iter().enumerate() {
            debug_assert!(c <= sigma);
            running[c as usize] += 1;
            let b = (i + 1) / BLOCK;
            if (i + 1) % BLOCK == 0 && b < blocks {
                for cc in 0..classes {
                    rank_samples[cc * blocks + b] = running[cc];
                }
            }
        }
        let counts = running;
        let mut partial = vec![0u32; classes + 1];
        for c in 0..classes {
            partial[c + 1] = partial[c] + counts[c];
        }
        CharSeq { symbols, sigma, rank_samples, blocks, counts, partial }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn sigma(&self) -> u8 {
        self.sigma
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Symbol at 1-based position `i`.
    pub fn get(&self, i: usize) -> u8 {
        self.symbols[i - 1]
    }

    /// Total occurrences of `c`.
    pub fn occ(&self, c: u8) -> usize {
        self.counts[c as usize] as usize
    }

    /// `C[c]`: number of symbols strictly smaller than `c`. `C[0] = 0`.
    pub fn partial_count(&self, c: u8) -> usize {
        self.partial[c as usize] as usize
    }

    /// Occurrences of `c` in positions `[1..i]`.
    pub fn rank(&self, c: u8, i: usize) -> Result<usize> {
        if c > self.sigma {
            return Err(Error::InvalidSymbol(c as u16));
        }
        if i > self.symbols.len() {
            return Err(Error::OutOfRange("rank position"));
        }
        let b = i / BLOCK;
        let mut acc = self.rank_samples[c as usize * self.blocks + b] as usize;
        acc += self.symbols[b * BLOCK..i].iter().filter(|&&s| s == c).count();
        Ok(acc)
    }

    /// 1-based position of the k-th occurrence of `c`.
    pub fn select(&self, c: u8, k: usize) -> Result<usize> {
        if c > self.sigma {
            return Err(Error::InvalidSymbol(c as u16));
        }
        if k == 0 || k > self.occ(c) {
            return Err(Error::OutOfRange("select rank"));
        }
        // binary search over blocks, then scan
        let row = &self.rank_samples[c as usize * self.blocks..(c as usize + 1) * self.blocks];
        let mut lo = 0usize;
        let mut hi = self.blocks;
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if (row[mid] as usize) < k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut remaining = k - row[lo] as usize;
        for (off, &s) in self.symbols[lo * BLOCK..].iter().enumerate() {
            if s == c {
                remaining -= 1;
                if remaining == 0 {
                    return Ok(lo * BLOCK + off + 1);
                }
            }
        }
        unreachable!("select bounds checked");
    }

    /// True iff positions `[lo..hi]` (1-based, inclusive) hold a single distinct symbol.
    pub fn range_is_uniform(&self, lo: usize, hi: usize) -> bool {
        debug_assert!(lo >= 1 && lo <= hi && hi <= self.symbols.len());
        let c = self.symbols[lo - 1];
        let occ = self.rank(c, hi).unwrap() - self.rank(c, lo - 1).unwrap();
        occ == hi - lo + 1
    }

    /// Distinct symbols in `[lo..hi]`, ascending (terminator first when present).
    pub fn distinct_in_range(&self, lo: usize, hi: usize) -> Vec<u8> {
        debug_assert!(lo >= 1 && lo <= hi && hi <= self.symbols.len());
        let width = hi - lo + 1;
        if width <= 2 * (self.sigma as usize + 1) {
            let mut out: Vec<u8> = self.symbols[lo - 1..hi].to_vec();
            out.sort_unstable();
            out.dedup();
            out
        } else {
            let mut out = Vec::new();
            for c in 0..=self.sigma {
                if self.rank(c, hi).unwrap() > self.rank(c, lo - 1).unwrap() {
                    out.push(c);
                }
            }
            out
        }
    }

    /// Occurrences of symbols strictly smaller than `c` in `[lo..hi]`.
    pub fn count_smaller_in_range(&self, c: u8, lo: usize, hi: usize) -> usize {
        let mut acc = 0;
        for b in 0..c {
            acc += self.rank(b, hi).unwrap() - self.rank(b, lo - 1).unwrap();
        }
        acc
    }
}
