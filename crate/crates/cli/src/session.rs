//! The batch query language: one command per line, one output line per
//! command, `ERR <code>` on failure, and processing continues after errors.

use bbwx::biindex::{BwtIndex, Descriptor, Side};
use bbwx::cdawg::{CdawgEngine, CdawgIndex, CdawgState};
use bbwx::dbg::{ArcLabels, ArcVariant, DbgHandle, DbgView, OrderChange};
use bbwx::engine::{BidiEngine, BwtEngine};
use bbwx::ms::{self, MsStrategy};
use bbwx::{Error, Text};
use std::fmt::Write as _;

/// Engine selector; the BWT engine is active until an `ENGINE` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EngineKind {
    Bwt,
    Cdawg,
}

/// Either engine behind one state type, so the command loop is engine-blind.
pub struct AnyEngine<'a> {
    bwt: BwtEngine<'a>,
    cdawg: CdawgEngine<'a>,
    kind: EngineKind,
}

#[derive(Clone)]
pub enum AnyState {
    Bwt(Descriptor),
    Cdawg(CdawgState),
}

impl<'a> AnyEngine<'a> {
    fn bwt_state(&self, s: &AnyState) -> Descriptor {
        match s {
            AnyState::Bwt(d) => *d,
            AnyState::Cdawg(c) => self.cdawg.view(c),
        }
    }

    fn cdawg_state(&self, s: &AnyState) -> CdawgState {
        match s {
            AnyState::Cdawg(c) => *c,
            AnyState::Bwt(d) => {
                // re-search the represented string on the CDAWG engine
                let w = self.bwt.index().read_string(d);
                let mut cur = self.cdawg.empty();
                for &c in &w {
                    cur = self.cdawg.extend(&cur, Side::Right, c).expect("string occurs");
                }
                cur
            }
        }
    }

    /// Converts the state to the active engine's representation.
    fn align(&self, s: &AnyState) -> AnyState {
        match self.kind {
            EngineKind::Bwt => AnyState::Bwt(self.bwt_state(s)),
            EngineKind::Cdawg => AnyState::Cdawg(self.cdawg_state(s)),
        }
    }
}

impl BidiEngine for AnyEngine<'_> {
    type State = AnyState;

    fn empty(&self) -> AnyState {
        match self.kind {
            EngineKind::Bwt => AnyState::Bwt(self.bwt.empty()),
            EngineKind::Cdawg => AnyState::Cdawg(self.cdawg.empty()),
        }
    }

    fn view(&self, s: &AnyState) -> Descriptor {
        match s {
            AnyState::Bwt(d) => self.bwt.view(d),
            AnyState::Cdawg(c) => self.cdawg.view(c),
        }
    }

    fn extend(&self, s: &AnyState, side: Side, c: u8) -> bbwx::Result<AnyState> {
        match s {
            AnyState::Bwt(d) => Ok(AnyState::Bwt(self.bwt.extend(d, side, c)?)),
            AnyState::Cdawg(st) => Ok(AnyState::Cdawg(self.cdawg.extend(st, side, c)?)),
        }
    }

    fn contract(&self, s: &AnyState, side: Side) -> bbwx::Result<AnyState> {
        match s {
            AnyState::Bwt(d) => Ok(AnyState::Bwt(self.bwt.contract(d, side)?)),
            AnyState::Cdawg(st) => Ok(AnyState::Cdawg(self.cdawg.contract(st, side)?)),
        }
    }

    fn enumerate(&self, s: &AnyState, side: Side) -> Vec<u8> {
        match s {
            AnyState::Bwt(d) => self.bwt.enumerate(d, side),
            AnyState::Cdawg(st) => self.cdawg.enumerate(st, side),
        }
    }

    fn is_maximal(&self, s: &AnyState, side: Side) -> bool {
        match s {
            AnyState::Bwt(d) => self.bwt.is_maximal(d, side),
            AnyState::Cdawg(st) => self.cdawg.is_maximal(st, side),
        }
    }

    fn freq(&self, s: &AnyState) -> usize {
        self.view(s).freq()
    }

    fn inc_freq(&self, s: &AnyState, side: Side) -> bbwx::Result<(AnyState, usize)> {
        match s {
            AnyState::Bwt(d) => {
                let (d, k) = self.bwt.inc_freq(d, side)?;
                Ok((AnyState::Bwt(d), k))
            }
            AnyState::Cdawg(st) => {
                let (st, k) = self.cdawg.inc_freq(st, side)?;
                Ok((AnyState::Cdawg(st), k))
            }
        }
    }

    fn dec_freq(&self, s: &AnyState, side: Side) -> bbwx::Result<(AnyState, usize)> {
        match s {
            AnyState::Bwt(d) => {
                let (d, k) = self.bwt.dec_freq(d, side)?;
                Ok((AnyState::Bwt(d), k))
            }
            AnyState::Cdawg(st) => {
                let (st, k) = self.cdawg.dec_freq(st, side)?;
                Ok((AnyState::Cdawg(st), k))
            }
        }
    }

    fn inc_to_max_rep(&self, s: &AnyState) -> bbwx::Result<(AnyState, usize)> {
        match s {
            AnyState::Bwt(d) => {
                let (d, k) = self.bwt.inc_to_max_rep(d)?;
                Ok((AnyState::Bwt(d), k))
            }
            AnyState::Cdawg(st) => {
                let (st, k) = self.cdawg.inc_to_max_rep(st)?;
                Ok((AnyState::Cdawg(st), k))
            }
        }
    }

    fn dec_to_max_rep(&self, s: &AnyState, side: Side) -> bbwx::Result<(AnyState, usize)> {
        match s {
            AnyState::Bwt(d) => {
                let (d, k) = self.bwt.dec_to_max_rep(d, side)?;
                Ok((AnyState::Bwt(d), k))
            }
            AnyState::Cdawg(st) => {
                let (st, k) = self.cdawg.dec_to_max_rep(st, side)?;
                Ok((AnyState::Cdawg(st), k))
            }
        }
    }
}

pub struct Session<'a> {
    engine: AnyEngine<'a>,
    text: &'a Text,
    idx: &'a BwtIndex,
    state: AnyState,
}

impl<'a> Session<'a> {
    pub fn new(idx: &'a BwtIndex, cdawg: &'a CdawgIndex) -> Self {
        let engine =
            AnyEngine { bwt: BwtEngine::new(idx), cdawg: CdawgEngine::new(cdawg), kind: EngineKind::Bwt };
        let state = engine.empty();
        Session { engine, text: idx.text(), idx, state }
    }

    /// Runs one script line, returning the output line (without newline).
    pub fn run_line(&mut self, line: &str) -> String {
        match self.execute(line) {
            Ok(out) => out,
            Err(code) => format!("ERR {code}"),
        }
    }

    fn execute(&mut self, line: &str) -> Result<String, &'static str> {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            return Err("SYNTAX");
        }
        let upper: Vec<String> = tokens.iter().map(|t| t.to_ascii_uppercase()).collect();
        match upper[0].as_str() {
            "START" if tokens.len() == 1 => {
                self.state = self.engine.empty();
                Ok(self.describe())
            }
            "FIND" if tokens.len() == 2 => {
                let w = self.map_string(tokens[1])?;
                let mut cur = self.engine.empty();
                for &c in &w {
                    cur = self.engine.extend(&cur, Side::Right, c).map_err(code_of)?;
                }
                self.state = cur;
                Ok(self.describe())
            }
            "EXT" if tokens.len() == 3 => {
                let side = parse_side(&upper[1])?;
                let c = self.map_char(tokens[2])?;
                self.state = self.engine.extend(&self.state, side, c).map_err(code_of)?;
                Ok(self.describe())
            }
            "CTR" if tokens.len() == 2 => {
                let side = parse_side(&upper[1])?;
                self.state = self.engine.contract(&self.state, side).map_err(code_of)?;
                Ok(self.describe())
            }
            "ENUM" if tokens.len() == 2 => {
                let side = parse_side(&upper[1])?;
                let symbols = self.engine.enumerate(&self.state, side);
                Ok(format!("OK {}", self.symbol_set(&symbols)))
            }
            "MAXIMAL" if tokens.len() == 2 => {
                let side = parse_side(&upper[1])?;
                Ok(format!("OK {}", self.engine.is_maximal(&self.state, side)))
            }
            "FREQ" if tokens.len() == 1 => Ok(format!("OK {}", self.engine.freq(&self.state))),
            "MS" if tokens.len() == 2 || (tokens.len() == 3 && upper[2] == "LAZY") => {
                // queries may contain symbols absent from the text: matched as 0
                let q: Vec<u8> =
                    tokens[1].bytes().map(|b| self.text.symbol_of_byte(b).unwrap_or(0)).collect();
                let values = if tokens.len() == 3 {
                    ms::matching_statistics(self.idx, &q, MsStrategy::Lazy).values
                } else {
                    ms::eager(&self.engine, &q).values
                };
                let mut out = String::from("OK");
                for v in values {
                    write!(out, " {v}").unwrap();
                }
                Ok(out)
            }
            "DBG" if tokens.len() >= 2 => self.execute_dbg(&tokens, &upper),
            "ENGINE" if tokens.len() == 2 => {
                let kind = match upper[1].as_str() {
                    "BWT" => EngineKind::Bwt,
                    "CDAWG" => EngineKind::Cdawg,
                    _ => return Err("SYNTAX"),
                };
                self.engine.kind = kind;
                self.state = self.engine.align(&self.state);
                Ok("OK".to_string())
            }
            _ => Err("SYNTAX"),
        }
    }

    fn execute_dbg(&mut self, tokens: &[&str], upper: &[String]) -> Result<String, &'static str> {
        let view = DbgView::new(&self.engine);
        let handle = |s: &AnyState, engine: &AnyEngine| DbgHandle {
            state: s.clone(),
            k: engine.view(s).len(),
        };
        match upper[1].as_str() {
            "NODE" if tokens.len() == 3 => {
                let w = self.map_string(tokens[2])?;
                let h = view.node(&w).map_err(code_of)?;
                self.state = h.state;
                Ok(self.describe())
            }
            "ARCS" if tokens.len() == 3 || (tokens.len() == 4 && upper[3] == "COMPLETE") => {
                let side = parse_side(&upper[2])?;
                let variant =
                    if tokens.len() == 4 { ArcVariant::Complete } else { ArcVariant::Occurring };
                let h = handle(&self.state, &self.engine);
                let labels = view.arcs(&h, side, variant).map_err(code_of)?;
                Ok(format!("OK {}", self.arc_set(&labels)))
            }
            "FOLLOW" if tokens.len() == 4 || (tokens.len() == 5 && upper[4] == "COMPLETE") => {
                let side = parse_side(&upper[2])?;
                let c = self.map_char(tokens[3])?;
                let variant =
                    if tokens.len() == 5 { ArcVariant::Complete } else { ArcVariant::Occurring };
                let h = handle(&self.state, &self.engine);
                let (dest, _arc) = view.follow(&h, side, c, variant).map_err(code_of)?;
                self.state = dest.state;
                Ok(self.describe())
            }
            "INC" if tokens.len() == 3 => {
                let change = match upper[2].as_str() {
                    "FREQ" => OrderChange::IncFreq(Side::Right),
                    "MAXREP" => OrderChange::IncToMaxRep,
                    _ => OrderChange::IncUnit(Side::Right, self.map_char(tokens[2])?),
                };
                let h = handle(&self.state, &self.engine);
                let (dest, _k) = view.change_order(&h, change).map_err(code_of)?;
                self.state = dest.state;
                Ok(self.describe())
            }
            "DEC" if tokens.len() == 3 => {
                let change = match upper[2].as_str() {
                    "UNIT" => OrderChange::DecUnit(Side::Right),
                    "FREQ" => OrderChange::DecFreq(Side::Right),
                    "MAXREP" => OrderChange::DecToMaxRep(Side::Left),
                    _ => return Err("SYNTAX"),
                };
                let h = handle(&self.state, &self.engine);
                let (dest, _k) = view.change_order(&h, change).map_err(code_of)?;
                self.state = dest.state;
                Ok(self.describe())
            }
            _ => Err("SYNTAX"),
        }
    }

    fn describe(&self) -> String {
        let d = self.engine.view(&self.state);
        format!(
            "OK fwd=[{},{}] rev=[{},{}] len={} freq={}",
            d.fwd.lo,
            d.fwd.hi,
            d.rev.lo,
            d.rev.hi,
            d.len,
            d.freq()
        )
    }

    fn symbol_set(&self, symbols: &[u8]) -> String {
        let inner: Vec<String> =
            symbols.iter().map(|&s| (self.text.byte_of_symbol(s) as char).to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }

    fn arc_set(&self, labels: &ArcLabels) -> String {
        let mut parts: Vec<String> = Vec::new();
        if labels.terminator {
            parts.push("#".to_string());
        }
        parts.extend(labels.symbols.iter().map(|&s| (self.text.byte_of_symbol(s) as char).to_string()));
        format!("{{{}}}", parts.join(","))
    }

    fn map_string(&self, token: &str) -> Result<Vec<u8>, &'static str> {
        token.bytes().map(|b| self.text.symbol_of_byte(b).ok_or("SYMBOL")).collect()
    }

    fn map_char(&self, token: &str) -> Result<u8, &'static str> {
        let bytes = token.as_bytes();
        if bytes.len() != 1 {
            return Err("SYNTAX");
        }
        self.text.symbol_of_byte(bytes[0]).ok_or("SYMBOL")
    }
}

fn parse_side(token: &str) -> Result<Side, &'static str> {
    match token {
        "L" => Ok(Side::Left),
        "R" => Ok(Side::Right),
        _ => Err("SYNTAX"),
    }
}

fn code_of(e: Error) -> &'static str {
    match e {
        Error::NotFound => "NOTFOUND",
        Error::Empty => "EMPTY",
        Error::InvalidSymbol(_) => "SYMBOL",
        _ => "INTERNAL",
    }
}
