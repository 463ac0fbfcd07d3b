//! Text representation, suffix-array/BWT construction for the text and its
//! reverse, and the brute-force oracles every other module is validated against.

pub mod oracle;
mod suffix;
mod text;

pub use suffix::SuffixStructures;
pub use text::{InputFormat, RecordSpan, Text};

/// Inclusive row range over a BWT, 1-based. Its width is the represented
/// string's frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: u32,
    pub hi: u32,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Self {
        Interval { lo: lo as u32, hi: hi as u32 }
    }

    pub fn width(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn lo(&self) -> usize {
        self.lo as usize
    }

    pub fn hi(&self) -> usize {
        self.hi as usize
    }
}
