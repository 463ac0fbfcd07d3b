use crate::succinct::CharSeq;
use crate::{Error, Result};

/// One maximal run of equal symbols, 1-based inclusive bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub ch: u8,
    pub start: u32,
    pub end: u32,
}

/// Run-length encoded BWT supporting rank, select, access and the psi/LF
/// steps, all logarithmic in the number of runs.
#[derive(Debug, Clone)]
pub struct RlBwt {
    runs: Vec<Run>,
    // per symbol: (run index into `runs`, occurrences of the symbol before it)
    per_char: Vec<Vec<(u32, u32)>>,
    counts: Vec<u32>,
    partial: Vec<u32>, // partial[c] = symbols strictly smaller than c
    n: u32,
    sigma: u8,
}

impl RlBwt {
    pub fn from_charseq(seq: &CharSeq) -> Self {
        let symbols = seq.symbols();
        let mut runs: Vec<Run> = Vec::new();
        for (i, &c) in symbols.iter().enumerate() {
            match runs.last_mut() {
                Some(r) if r.ch == c => r.end = i as u32 + 1,
                _ => runs.push(Run { ch: c, start: i as u32 + 1, end: i as u32 + 1 }),
            }
        }
        Self::from_runs(runs, symbols.len() as u32, seq.sigma())
    }

    pub fn from_runs(runs: Vec<Run>, n: u32, sigma: u8) -> Self {
        let classes = sigma as usize + 1;
        let mut per_char: Vec<Vec<(u32, u32)>> = vec![Vec::new(); classes];
        let mut counts = vec![0u32; classes];
        for (i, r) in runs.iter().enumerate() {
            let c = r.ch as usize;
            per_char[c].push((i as u32, counts[c]));
            counts[c] += r.end - r.start + 1;
        }
        let mut partial = vec![0u32; classes + 1];
        for c in 0..classes {
            partial[c + 1] = partial[c] + counts[c];
        }
        RlBwt { runs, per_char, counts, partial, n, sigma }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn sigma(&self) -> u8 {
        self.sigma
    }

    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn occ(&self, c: u8) -> usize {
        self.counts[c as usize] as usize
    }

    /// `C[c]`: symbols strictly smaller than `c`.
    pub fn partial_count(&self, c: u8) -> usize {
        self.partial[c as usize] as usize
    }

    /// Symbol at 1-based position `i`.
    pub fn access(&self, i: usize) -> u8 {
        debug_assert!(i >= 1 && i <= self.n as usize);
        let idx = self.runs.partition_point(|r| (r.start as usize) <= i) - 1;
        self.runs[idx].ch
    }

    /// Occurrences of `c` in positions `[1..i]`.
    pub fn rank(&self, c: u8, i: usize) -> Result<usize> {
        if c > self.sigma {
            return Err(Error::InvalidSymbol(c as u16));
        }
        if i > self.n as usize {
            return Err(Error::OutOfRange("rank position"));
        }
        if i == 0 {
            return Ok(0);
        }
        let list = &self.per_char[c as usize];
        let idx = list.partition_point(|&(run, _)| (self.runs[run as usize].start as usize) <= i);
        if idx == 0 {
            return Ok(0);
        }
        let (run, before) = list[idx - 1];
        let r = &self.runs[run as usize];
        Ok(before as usize + (i.min(r.end as usize) - r.start as usize + 1))
    }

    /// 1-based position of the k-th occurrence of `c`.
    pub fn select(&self, c: u8, k: usize) -> Result<usize> {
        if c > self.sigma {
            return Err(Error::InvalidSymbol(c as u16));
        }
        if k == 0 || k > self.occ(c) {
            return Err(Error::OutOfRange("select rank"));
        }
        let list = &self.per_char[c as usize];
        let idx = list.partition_point(|&(_, before)| (before as usize) < k) - 1;
        let (run, before) = list[idx];
        Ok(self.runs[run as usize].start as usize + (k - before as usize) - 1)
    }

    /// Row of the suffix one position to the right: `psi(i) = select_c(i - C[c])`
    /// where `c` is the first symbol of row `i`'s suffix.
    pub fn psi(&self, i: usize) -> Result<usize> {
        let c = self.first_symbol(i)?;
        self.select(c, i - self.partial[c as usize] as usize)
    }

    /// First symbol of the suffix at row `i`, from the partial counts.
    pub fn first_symbol(&self, i: usize) -> Result<u8> {
        if i < 1 || i > self.n as usize {
            return Err(Error::OutOfRange("row"));
        }
        let c = self.partial.partition_point(|&p| (p as usize) < i) - 1;
        Ok(c as u8)
    }

    /// Backward step: rows of `c ·` the interval's strings.
    pub fn lf_step(&self, c: u8, lo: usize, hi: usize) -> (usize, usize) {
        let base = self.partial[c as usize] as usize;
        let l = base + self.rank(c, lo - 1).unwrap_or(0) + 1;
        let h = base + self.rank(c, hi).unwrap_or(0);
        (l, h)
    }

    /// Distinct symbols in `[lo..hi]`, ascending.
    pub fn distinct_in_range(&self, lo: usize, hi: usize) -> Vec<u8> {
        debug_assert!(lo >= 1 && lo <= hi && hi <= self.n as usize);
        let mut seen = vec![false; self.sigma as usize + 1];
        let mut found = 0usize;
        let mut idx = self.runs.partition_point(|r| (r.start as usize) <= lo) - 1;
        while idx < self.runs.len() && (self.runs[idx].start as usize) <= hi {
            let c = self.runs[idx].ch as usize;
            if !seen[c] {
                seen[c] = true;
                found += 1;
                if found == self.sigma as usize + 1 {
                    break;
                }
            }
            idx += 1;
        }
        (0..=self.sigma).filter(|&c| seen[c as usize]).collect()
    }

    /// True iff `[lo..hi]` lies inside one run.
    pub fn range_is_uniform(&self, lo: usize, hi: usize) -> bool {
        let idx = self.runs.partition_point(|r| (r.start as usize) <= lo) - 1;
        self.runs[idx].end as usize >= hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // annb#aa: a=1, b=2, n=3
    fn banana_rl() -> RlBwt {
        RlBwt::from_charseq(&CharSeq::new(vec![1, 3, 3, 2, 0, 1, 1], 3))
    }

    #[test]
    fn run_examples() {
        let r = banana_rl();
        assert_eq!(r.run_count(), 5); // a | nn | b | # | aa
        assert_eq!(r.rank(1, 7).unwrap(), 3);
        assert_eq!(r.rank(1, 0).unwrap(), 0);
        assert_eq!(r.access(5), 0);
        assert_eq!(r.select(3, 2).unwrap(), 3);
    }

    #[test]
    fn agrees_with_charseq() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..30 {
            let n = rng.gen_range(1..400);
            let sigma = rng.gen_range(1..5) as u8;
            let syms: Vec<u8> = (0..n).map(|_| rng.gen_range(0..=sigma)).collect();
            let seq = CharSeq::new(syms.clone(), sigma);
            let rl = RlBwt::from_charseq(&seq);
            for _ in 0..2500 {
                let c = rng.gen_range(0..=sigma);
                let i = rng.gen_range(0..=n);
                assert_eq!(rl.rank(c, i).unwrap(), seq.rank(c, i).unwrap());
                if i >= 1 {
                    assert_eq!(rl.access(i), seq.get(i));
                }
                let occ = seq.occ(c);
                if occ > 0 {
                    let k = rng.gen_range(1..=occ);
                    assert_eq!(rl.select(c, k).unwrap(), seq.select(c, k).unwrap());
                }
                let lo = rng.gen_range(1..=n);
                let hi = rng.gen_range(lo..=n);
                assert_eq!(rl.distinct_in_range(lo, hi), seq.distinct_in_range(lo, hi));
                assert_eq!(rl.range_is_uniform(lo, hi), seq.range_is_uniform(lo, hi));
            }
        }
    }

    #[test]
    fn psi_is_isa_shift() {
        // psi of the row of suffix p is the row of suffix p+1
        use crate::textcore::{InputFormat, SuffixStructures, Text};
        let t = Text::build(b"mississippi", InputFormat::Raw).unwrap();
        let ss = SuffixStructures::build(&t);
        let rl = RlBwt::from_charseq(&ss.bwt);
        let n = ss.n();
        for row in 1..=n {
            let p = ss.sa[row - 1] as usize;
            if p < n {
                assert_eq!(rl.psi(row).unwrap(), ss.isa[p] as usize);
            }
        }
    }
}
