use crate::{Error, Result};

/// Input decoding for [`Text::build`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Raw,
    Fasta,
}

/// A FASTA record boundary, kept for reporting only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordSpan {
    pub name: String,
    /// 1-based start within the concatenated text.
    pub start: usize,
    pub len: usize,
}

/// The indexed text: symbols over `[1..sigma]` followed by the terminator 0,
/// plus the bijection between input bytes and symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    symbols: Vec<u8>, // length n, symbols[n-1] == 0
    sigma: u8,
    sym_of_byte: [u8; 256], // 0 = unmapped
    byte_of_sym: Vec<u8>,   // indexed by symbol, [0] unused
    records: Vec<RecordSpan>,
}

impl Text {
    pub fn build(bytes: &[u8], format: InputFormat) -> Result<Self> {
        let (effective, records) = match format {
            InputFormat::Raw => (bytes.to_vec(), Vec::new()),
            InputFormat::Fasta => parse_fasta(bytes)?,
        };
        if effective.is_empty() {
            return Err(Error::InvalidInput("empty effective text"));
        }
        let mut present = [false; 256];
        for &b in &effective {
            present[b as usize] = true;
        }
        let distinct = present.iter().filter(|&&p| p).count();
        if distinct > 255 {
            return Err(Error::InvalidInput("more than 255 distinct symbols"));
        }
        let mut sym_of_byte = [0u8; 256];
        let mut byte_of_sym = vec![0u8; distinct + 1];
        let mut next = 0u8;
        for b in 0..256 {
            if present[b] {
                next += 1;
                sym_of_byte[b] = next;
                byte_of_sym[next as usize] = b as u8;
            }
        }
        let mut symbols: Vec<u8> = effective.iter().map(|&b| sym_of_byte[b as usize]).collect();
        symbols.push(0);
        Ok(Text { symbols, sigma: next, sym_of_byte, byte_of_sym, records })
    }

    /// Reassembles a text from serialized parts.
    pub fn from_serialized(
        symbols_with_terminator: Vec<u8>,
        sigma: u8,
        sym_of_byte: [u8; 256],
    ) -> Result<Self> {
        if symbols_with_terminator.len() < 2 || *symbols_with_terminator.last().unwrap() != 0 {
            return Err(Error::InvalidInput("text section must end with the terminator"));
        }
        let mut byte_of_sym = vec![0u8; sigma as usize + 1];
        for b in 0..256 {
            let s = sym_of_byte[b];
            if s != 0 {
                if s > sigma {
                    return Err(Error::InvalidSymbol(s as u16));
                }
                byte_of_sym[s as usize] = b as u8;
            }
        }
        Ok(Text {
            symbols: symbols_with_terminator,
            sigma,
            sym_of_byte,
            byte_of_sym,
            records: Vec::new(),
        })
    }

    /// Alphabet map table, indexed by input byte; 0 means unmapped.
    pub fn alphabet_table(&self) -> &[u8; 256] {
        &self.sym_of_byte
    }

    /// Builds directly from symbols over `[1..sigma]` (no byte mapping).
    pub fn from_symbols(symbols_without_terminator: &[u8], sigma: u8) -> Result<Self> {
        if symbols_without_terminator.is_empty() {
            return Err(Error::InvalidInput("empty effective text"));
        }
        let mut byte_of_sym = vec![0u8; sigma as usize + 1];
        let mut sym_of_byte = [0u8; 256];
        for s in 1..=sigma {
            byte_of_sym[s as usize] = s;
            sym_of_byte[s as usize] = s;
        }
        let mut symbols = symbols_without_terminator.to_vec();
        for &s in &symbols {
            if s == 0 || s > sigma {
                return Err(Error::InvalidSymbol(s as u16));
            }
        }
        symbols.push(0);
        Ok(Text { symbols, sigma, sym_of_byte, byte_of_sym, records: Vec::new() })
    }

    /// Total length `n`, terminator included.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn sigma(&self) -> u8 {
        self.sigma
    }

    /// All `n` symbols, terminator last.
    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Symbol at 1-based position `i` of `T#`.
    pub fn symbol_at(&self, i: usize) -> u8 {
        self.symbols[i - 1]
    }

    /// Maps an input byte to its symbol, if the byte occurs in the text.
    pub fn symbol_of_byte(&self, b: u8) -> Option<u8> {
        match self.sym_of_byte[b as usize] {
            0 => None,
            s => Some(s),
        }
    }

    /// Maps a symbol back to its input byte; the terminator maps to `b'#'`.
    pub fn byte_of_symbol(&self, s: u8) -> u8 {
        if s == 0 {
            b'#'
        } else {
            self.byte_of_sym[s as usize]
        }
    }

    /// Maps a byte string; `None` if any byte is unmappable.
    pub fn map_bytes(&self, bytes: &[u8]) -> Option<Vec<u8>> {
        bytes.iter().map(|&b| self.symbol_of_byte(b)).collect()
    }

    /// Reversed text with a fresh terminator: `reverse(T)#`.
    pub fn reversed_symbols(&self) -> Vec<u8> {
        let n = self.symbols.len();
        let mut out = Vec::with_capacity(n);
        out.extend(self.symbols[..n - 1].iter().rev());
        out.push(0);
        out
    }

    pub fn records(&self) -> &[RecordSpan] {
        &self.records
    }
}

fn parse_fasta(bytes: &[u8]) -> Result<(Vec<u8>, Vec<RecordSpan>)> {
    let mut effective = Vec::new();
    let mut records = Vec::new();
    let mut current: Option<(String, usize)> = None;
    let mut seen_header = false;
    for line in bytes.split(|&b| b == b'\n') {
        let line = line.strip_suffix(b"\r").unwrap_or(line);
        if line.first() == Some(&b'>') {
            seen_header = true;
            if let Some((name, start)) = current.take() {
                records.push(RecordSpan { name, start, len: effective.len() + 1 - start });
            }
            let name = String::from_utf8_lossy(&line[1..]).trim().to_string();
            current = Some((name, effective.len() + 1));
        } else if !line.is_empty() {
            if !seen_header {
                return Err(Error::InvalidInput("fasta input must start with a '>' header"));
            }
            effective.extend_from_slice(line);
        }
    }
    if let Some((name, start)) = current.take() {
        records.push(RecordSpan { name, start, len: effective.len() + 1 - start });
    }
    Ok((effective, records))
}
