use crate::{Error, Result};

/// Plain bitvector with a rank directory sampled per 64-bit word.
///
/// `rank1(i)` counts set bits in positions `[1..i]`; `select1(k)` returns the
/// 1-based position of the k-th set bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
    // rank_samples[w] = number of ones strictly before word w
    rank_samples: Vec<u32>,
    ones: usize,
}

impl BitVec {
    pub fn from_bools(bits: &[bool]) -> Self {
        let mut words = vec![0u64; (bits.len() + 63) / 64];
        for (i, &b) in bits.iter().enumerate() {
            if b {
                words[i / 64] |= 1u64 << (i % 64);
            }
        }
        Self::from_words(words, bits.len())
    }

    pub fn from_words(words: Vec<u64>, len: usize) -> Self {
        debug_assert!(words.len() == (len + 63) / 64);
        let mut rank_samples = Vec::with_capacity(words.len() + 1);
        let mut acc = 0u32;
        for &w in &words {
            rank_samples.push(acc);
            acc += w.count_ones();
        }
        rank_samples.push(acc);
        BitVec { len, words, rank_samples, ones: acc as usize }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Bit at 1-based position `i`.
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.len);
        let i = i - 1;
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Number of set bits in positions `[1..i]`; `rank1(0) = 0`.
    pub fn rank1(&self, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(Error::OutOfRange("rank1 position"));
        }
        if i == 0 {
            return Ok(0);
        }
        let w = (i - 1) / 64;
        let bit = (i - 1) % 64;
        let partial = (self.words[w] << (63 - bit)).count_ones() as usize;
        Ok(self.rank_samples[w] as usize + partial)
    }

    /// 1-based position of the k-th set bit, `1 <= k <= count_ones()`.
    pub fn select1(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.ones {
            return Err(Error::OutOfRange("select1 rank"));
        }
        // binary search the word whose prefix count first reaches k
        let mut lo = 0usize;
        let mut hi = self.words.len();
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if (self.rank_samples[mid] as usize) < k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut remaining = k - self.rank_samples[lo] as usize;
        let mut w = self.words[lo];
        let mut pos = lo * 64;
        loop {
            if w & 1 == 1 {
                remaining -= 1;
                if remaining == 0 {
                    return Ok(pos + 1);
                }
            }
            w >>= 1;
            pos += 1;
        }
    }
}
