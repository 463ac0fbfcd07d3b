use super::Text;
use crate::succinct::CharSeq;

/// Suffix array, inverse, and BWT for `T#`, plus the mirrored structures for
/// `reverse(T)#`.
#[derive(Debug, Clone)]
pub struct SuffixStructures {
    pub sa: Vec<u32>,      // sa[row-1] = 1-based suffix start
    pub isa: Vec<u32>,     // isa[pos-1] = 1-based row
    pub bwt: CharSeq,
    pub rev_sa: Vec<u32>,
    pub rev_isa: Vec<u32>,
    pub rev_bwt: CharSeq,
}

impl SuffixStructures {
    pub fn build(text: &Text) -> Self {
        let fwd = text.symbols();
        let rev = text.reversed_symbols();
        let (sa, isa, bwt) = build_one(fwd, text.sigma());
        let (rev_sa, rev_isa, rev_bwt) = build_one(&rev, text.sigma());
        SuffixStructures { sa, isa, bwt, rev_sa, rev_isa, rev_bwt }
    }

    pub fn n(&self) -> usize {
        self.sa.len()
    }

    /// Reassembles from serialized arrays; inverse permutations are recomputed.
    pub fn from_serialized(
        sigma: u8,
        sa: Vec<u32>,
        bwt_symbols: Vec<u8>,
        rev_sa: Vec<u32>,
        rev_bwt_symbols: Vec<u8>,
    ) -> Self {
        let invert = |sa: &[u32]| {
            let mut isa = vec![0u32; sa.len()];
            for (row, &pos) in sa.iter().enumerate() {
                isa[pos as usize - 1] = row as u32 + 1;
            }
            isa
        };
        SuffixStructures {
            isa: invert(&sa),
            rev_isa: invert(&rev_sa),
            sa,
            bwt: CharSeq::new(bwt_symbols, sigma),
            rev_sa,
            rev_bwt: CharSeq::new(rev_bwt_symbols, sigma),
        }
    }
}

fn build_one(symbols: &[u8], sigma: u8) -> (Vec<u32>, Vec<u32>, CharSeq) {
    let sa = suffix_array(symbols);
    let n = symbols.len();
    let mut isa = vec![0u32; n];
    for (row, &pos) in sa.iter().enumerate() {
        isa[pos as usize - 1] = row as u32 + 1;
    }
    let mut bwt = Vec::with_capacity(n);
    for &pos in &sa {
        let p = pos as usize;
        bwt.push(if p == 1 { symbols[n - 1] } else { symbols[p - 2] });
    }
    (sa, isa, CharSeq::new(bwt, sigma), )
}

/// Prefix-doubling suffix array; 1-based positions in sorted order.
fn suffix_array(symbols: &[u8]) -> Vec<u32> {
    let n = symbols.len();
    let mut sa: Vec<u32> = (0..n as u32).collect();
    let mut rank: Vec<u32> = symbols.iter().map(|&c| c as u32).collect();
    let mut tmp = vec![0u32; n];
    let mut k = 1usize;
    loop {
        let key = |i: u32| {
            let i = i as usize;
            let second = if i + k < n { rank[i + k] + 1 } else { 0 };
            ((rank[i] + 1) as u64) << 32 | second as u64
        };
        sa.sort_unstable_by_key(|&i| key(i));
        tmp[sa[0] as usize] = 0;
        for w in 1..n {
            let prev = sa[w - 1];
            let cur = sa[w];
            tmp[cur as usize] =
                tmp[prev as usize] + if key(prev) == key(cur) { 0 } else { 1 };
        }
        rank.copy_from_slice(&tmp);
        if rank[sa[n - 1] as usize] as usize == n - 1 {
            break;
        }
        k *= 2;
    }
    sa.iter_mut().for_each(|i| *i += 1);
    sa
}
