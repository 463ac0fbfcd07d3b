//! On-disk index format: the magic `BBWX`, a little-endian version word, and a
//! fixed-order sequence of tagged sections, each framed as a 4-byte tag plus a
//! 64-bit little-endian payload length. Unknown tags are skipped with a
//! warning; the CDAWG sections are optional.

use bbwx::cdawg::{Cdawg, CdawgArc, CdawgIndex, CdawgNode, MemberInfo, RlBwt, SlNext, WeinerArc, NO_CLASS};
use bbwx::cdawg::Run;
use bbwx::succinct::{BitVec, BpTree};
use bbwx::textcore::{SuffixStructures, Text};
use bbwx::topology::TopologyPair;
use bbwx::BwtIndex;
use std::io::{self, Read, Write};

pub const MAGIC: &[u8; 4] = b"BBWX";
pub const VERSION: u32 = 1;

const SECTION_ORDER: [&[u8; 4]; 19] = [
    b"TEXT", b"ALPH", b"SAFW", b"SABW", b"BWTF", b"BWTR", b"BPSF", b"BPLF", b"BPSB", b"BPLB",
    b"MKSF", b"MKLF", b"MKSB", b"MKLB", b"CDWF", b"CDWB", b"RLBF", b"RLBB", b"AFFX",
];

pub struct LoadedIndex {
    pub index: BwtIndex,
    pub cdawg: Option<CdawgIndex>,
}

impl LoadedIndex {
    /// Rebuilds the CDAWG engine structures when the sections were not
    /// persisted, so [`LoadedIndex::cdawg`] is always available afterwards.
    pub fn ensure_cdawg(&mut self) {
        if self.cdawg.is_none() {
            self.cdawg = Some(CdawgIndex::build(
                self.index.text(),
                self.index.structures(),
                self.index.topologies(),
            ));
        }
    }
}

pub fn save(w: &mut impl Write, idx: &BwtIndex, cdawg: Option<&CdawgIndex>) -> io::Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;

    let text = idx.text();
    let ss = idx.structures();
    let topo = idx.topologies();

    section(w, b"TEXT", &{
        let mut p = Vec::new();
        put_u64(&mut p, text.len() as u64);
        p.extend_from_slice(text.symbols());
        p
    })?;
    section(w, b"ALPH", &{
        let mut p = Vec::new();
        put_u64(&mut p, text.sigma() as u64);
        p.extend_from_slice(text.alphabet_table());
        p
    })?;
    section(w, b"SAFW", &encode_u32s(&ss.sa))?;
    section(w, b"SABW", &encode_u32s(&ss.rev_sa))?;
    section(w, b"BWTF", &encode_bytes(ss.bwt.symbols()))?;
    section(w, b"BWTR", &encode_bytes(ss.rev_bwt.symbols()))?;
    section(w, b"BPSF", &encode_bits(topo.fwd.st.shape.parens()))?;
    section(w, b"BPLF", &encode_bits(topo.fwd.slt.shape.parens()))?;
    section(w, b"BPSB", &encode_bits(topo.bwd.st.shape.parens()))?;
    section(w, b"BPLB", &encode_bits(topo.bwd.slt.shape.parens()))?;
    section(w, b"MKSF", &encode_bits(topo.fwd.st.shape.marks().expect("marks attached")))?;
    section(w, b"MKLF", &encode_bits(topo.fwd.slt.shape.marks().expect("marks attached")))?;
    section(w, b"MKSB", &encode_bits(topo.bwd.st.shape.marks().expect("marks attached")))?;
    section(w, b"MKLB", &encode_bits(topo.bwd.slt.shape.marks().expect("marks attached")))?;
    if let Some(cd) = cdawg {
        section(w, b"CDWF", &encode_cdawg(&cd.fwd))?;
        section(w, b"CDWB", &encode_cdawg(&cd.bwd))?;
        section(w, b"RLBF", &encode_rlbwt(&cd.fwd_rlbwt))?;
        section(w, b"RLBB", &encode_rlbwt(&cd.bwd_rlbwt))?;
        section(w, b"AFFX", &{
            let mut p = Vec::new();
            put_u64(&mut p, cd.fwd.node_count() as u64);
            for node in &cd.fwd.nodes {
                put_u32(&mut p, node.affix);
            }
            p
        })?;
    }
    Ok(())
}

pub fn load(r: &mut impl Read) -> io::Result<LoadedIndex> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(bad("not a BBWX index file"));
    }
    let mut ver = [0u8; 4];
    r.read_exact(&mut ver)?;
    if u32::from_le_bytes(ver) != VERSION {
        return Err(bad("unsupported index version"));
    }

    let mut sections: Vec<([u8; 4], Vec<u8>)> = Vec::new();
    loop {
        let mut tag = [0u8; 4];
        match r.read_exact(&mut tag) {
            Ok(()) => {}
            Err(e) if e.kind() == io::ErrorKind::UnexpectedEof => break,
            Err(e) => return Err(e),
        }
        let mut len = [0u8; 8];
        r.read_exact(&mut len)?;
        let len = u64::from_le_bytes(len) as usize;
        let mut payload = vec![0u8; len];
        r.read_exact(&mut payload)?;
        if !SECTION_ORDER.iter().any(|t| *t == &tag) {
            eprintln!("warning: skipping unknown section {:?}", String::from_utf8_lossy(&tag));
            continue;
        }
        sections.push((tag, payload));
    }
    let take = |tag: &[u8; 4]| -> io::Result<&Vec<u8>> {
        sections
            .iter()
            .find(|(t, _)| t == tag)
            .map(|(_, p)| p)
            .ok_or_else(|| bad("missing required section"))
    };

    let text = {
        let p = take(b"TEXT")?;
        let (n, rest) = get_u64(p)?;
        let symbols = rest.get(..n as usize).ok_or_else(|| bad("short TEXT section"))?.to_vec();
        let p = take(b"ALPH")?;
        let (sigma, rest) = get_u64(p)?;
        let mut table = [0u8; 256];
        table.copy_from_slice(rest.get(..256).ok_or_else(|| bad("short ALPH section"))?);
        Text::from_serialized(symbols, sigma as u8, table).map_err(|e| bad_owned(e.to_string()))?
    };
    let ss = SuffixStructures::from_serialized(
        text.sigma(),
        decode_u32s(take(b"SAFW")?)?,
        decode_bytes(take(b"BWTF")?)?,
        decode_u32s(take(b"SABW")?)?,
        decode_bytes(take(b"BWTR")?)?,
    );
    let tree = |shape: &[u8], marks: &[u8]| -> io::Result<(BpTree, BitVec)> {
        Ok((
            BpTree::from_parens(&decode_bits_to_bools(shape)?).map_err(|e| bad_owned(e.to_string()))?,
            decode_bits(marks)?,
        ))
    };
    let topo = TopologyPair::from_serialized(
        &ss,
        tree(take(b"BPSF")?, take(b"MKSF")?)?,
        tree(take(b"BPLF")?, take(b"MKLF")?)?,
        tree(take(b"BPSB")?, take(b"MKSB")?)?,
        tree(take(b"BPLB")?, take(b"MKLB")?)?,
    )
    .map_err(|e| bad_owned(e.to_string()))?;

    let cdawg = if sections.iter().any(|(t, _)| t == b"CDWF") {
        let mut fwd = decode_cdawg(take(b"CDWF")?)?;
        let mut bwd = decode_cdawg(take(b"CDWB")?)?;
        let fwd_rl = decode_rlbwt(take(b"RLBF")?, text.sigma())?;
        let bwd_rl = decode_rlbwt(take(b"RLBB")?, text.sigma())?;
        let p = take(b"AFFX")?;
        let (m, rest) = get_u64(p)?;
        if m as usize != fwd.nodes.len() || rest.len() < 4 * m as usize {
            return Err(bad("short AFFX section"));
        }
        for (i, chunk) in rest.chunks_exact(4).take(m as usize).enumerate() {
            let a = u32::from_le_bytes(chunk.try_into().unwrap());
            fwd.nodes[i].affix = a;
            bwd.nodes[a as usize].affix = i as u32;
        }
        Some(CdawgIndex::from_parts(fwd, bwd, fwd_rl, bwd_rl))
    } else {
        None
    };

    Ok(LoadedIndex { index: BwtIndex::from_parts(text, ss, topo), cdawg })
}

fn bad(msg: &'static str) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg)
}

fn bad_owned(msg: String) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg)
}

fn section(w: &mut impl Write, tag: &[u8; 4], payload: &[u8]) -> io::Result<()> {
    w.write_all(tag)?;
    w.write_all(&(payload.len() as u64).to_le_bytes())?;
    w.write_all(payload)
}

fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn get_u64(p: &[u8]) -> io::Result<(u64, &[u8])> {
    if p.len() < 8 {
        return Err(bad("truncated section"));
    }
    Ok((u64::from_le_bytes(p[..8].try_into().unwrap()), &p[8..]))
}

fn encode_bytes(bytes: &[u8]) -> Vec<u8> {
    let mut p = Vec::with_capacity(8 + bytes.len());
    put_u64(&mut p, bytes.len() as u64);
    p.extend_from_slice(bytes);
    p
}

fn decode_bytes(p: &[u8]) -> io::Result<Vec<u8>> {
    let (n, rest) = get_u64(p)?;
    rest.get(..n as usize).map(|s| s.to_vec()).ok_or_else(|| bad("short byte section"))
}

fn encode_u32s(values: &[u32]) -> Vec<u8> {
    let mut p = Vec::with_capacity(8 + 4 * values.len());
    put_u64(&mut p, values.len() as u64);
    for &v in values {
        put_u32(&mut p, v);
    }
    p
}

fn decode_u32s(p: &[u8]) -> io::Result<Vec<u32>> {
    let (n, rest) = get_u64(p)?;
    if rest.len() < 4 * n as usize {
        return Err(bad("short u32 section"));
    }
    Ok(rest.chunks_exact(4).take(n as usize).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect())
}

fn encode_bits(bits: &BitVec) -> Vec<u8> {
    let mut p = Vec::new();
    put_u64(&mut p, bits.len() as u64);
    for &w in bits.words() {
        p.extend_from_slice(&w.to_le_bytes());
    }
    p
}

fn decode_bits(p: &[u8]) -> io::Result<BitVec> {
    let (n, rest) = get_u64(p)?;
    let words = (n as usize + 63) / 64;
    if rest.len() < 8 * words {
        return Err(bad("short bit section"));
    }
    let w: Vec<u64> =
        rest.chunks_exact(8).take(words).map(|c| u64::from_le_bytes(c.try_into().unwrap())).collect();
    Ok(BitVec::from_words(w, n as usize))
}

fn decode_bits_to_bools(p: &[u8]) -> io::Result<Vec<bool>> {
    let bits = decode_bits(p)?;
    Ok((1..=bits.len()).map(|i| bits.get(i)).collect())
}

fn encode_rlbwt(rl: &RlBwt) -> Vec<u8> {
    let mut p = Vec::new();
    put_u64(&mut p, rl.run_count() as u64);
    put_u32(&mut p, rl.n() as u32);
    for r in rl.runs() {
        p.push(r.ch);
        put_u32(&mut p, r.start);
        put_u32(&mut p, r.end);
    }
    p
}

fn decode_rlbwt(p: &[u8], sigma: u8) -> io::Result<RlBwt> {
    let (count, rest) = get_u64(p)?;
    if rest.len() < 4 + 9 * count as usize {
        return Err(bad("short RLBWT section"));
    }
    let n = u32::from_le_bytes(rest[..4].try_into().unwrap());
    let mut runs = Vec::with_capacity(count as usize);
    let mut at = 4;
    for _ in 0..count {
        let ch = rest[at];
        let start = u32::from_le_bytes(rest[at + 1..at + 5].try_into().unwrap());
        let end = u32::from_le_bytes(rest[at + 5..at + 9].try_into().unwrap());
        runs.push(Run { ch, start, end });
        at += 9;
    }
    Ok(RlBwt::from_runs(runs, n, sigma))
}

fn encode_cdawg(cd: &Cdawg) -> Vec<u8> {
    let mut p = Vec::new();
    put_u64(&mut p, cd.node_count() as u64);
    put_u32(&mut p, cd.sink);
    put_u32(&mut p, cd.n);
    p.push(cd.synthetic_root as u8);
    for node in &cd.nodes {
        put_u32(&mut p, node.length);
        put_u32(&mut p, node.size);
        put_u32(&mut p, node.first);
        put_u32(&mut p, node.last);
        put_u32(&mut p, node.suffix_link);
        match &node.sl_next {
            Some(s) => {
                p.push(1);
                put_u32(&mut p, s.class);
                put_u32(&mut p, s.len);
                put_u32(&mut p, s.lo);
                put_u32(&mut p, s.hi);
            }
            None => p.push(0),
        }
        put_u32(&mut p, node.arcs.len() as u32);
        for a in &node.arcs {
            p.push(a.ch);
            put_u32(&mut p, a.right);
            put_u32(&mut p, a.target);
            put_u32(&mut p, a.child_lo);
            put_u32(&mut p, a.child_hi);
        }
        put_u32(&mut p, node.weiner.len() as u32);
        for a in &node.weiner {
            p.push(a.ch);
            put_u32(&mut p, a.target);
            put_u32(&mut p, a.target_len);
        }
        put_u32(&mut p, node.members.len() as u32);
        for m in &node.members {
            put_u32(&mut p, m.parent_class);
            put_u32(&mut p, m.parent_len);
            put_u32(&mut p, m.parent_lo);
            put_u32(&mut p, m.parent_hi);
            put_u32(&mut p, m.lma_class);
        }
    }
    for &mp in cd.mr_parents() {
        put_u32(&mut p, mp);
    }
    p
}

fn decode_cdawg(p: &[u8]) -> io::Result<Cdawg> {
    let mut cur = Cursor { buf: p, at: 0 };
    let count = cur.u64()? as usize;
    let sink = cur.u32()?;
    let n = cur.u32()?;
    let synthetic = cur.u8()? != 0;
    let mut nodes = Vec::with_capacity(count);
    for _ in 0..count {
        let length = cur.u32()?;
        let size = cur.u32()?;
        let first = cur.u32()?;
        let last = cur.u32()?;
        let suffix_link = cur.u32()?;
        let sl_next = if cur.u8()? != 0 {
            Some(SlNext { class: cur.u32()?, len: cur.u32()?, lo: cur.u32()?, hi: cur.u32()? })
        } else {
            None
        };
        let arc_count = cur.u32()? as usize;
        let mut arcs = Vec::with_capacity(arc_count);
        for _ in 0..arc_count {
            arcs.push(CdawgArc {
                ch: cur.u8()?,
                right: cur.u32()?,
                target: cur.u32()?,
                child_lo: cur.u32()?,
                child_hi: cur.u32()?,
            });
        }
        let weiner_count = cur.u32()? as usize;
        let mut weiner = Vec::with_capacity(weiner_count);
        for _ in 0..weiner_count {
            weiner.push(WeinerArc { ch: cur.u8()?, target: cur.u32()?, target_len: cur.u32()? });
        }
        let member_count = cur.u32()? as usize;
        let mut members = Vec::with_capacity(member_count);
        for _ in 0..member_count {
            members.push(MemberInfo {
                parent_class: cur.u32()?,
                parent_len: cur.u32()?,
                parent_lo: cur.u32()?,
                parent_hi: cur.u32()?,
                lma_class: cur.u32()?,
            });
        }
        nodes.push(CdawgNode {
            length,
            size,
            first,
            last,
            arcs,
            weiner,
            suffix_link,
            sl_next,
            affix: NO_CLASS, // restored from the AFFX section
            members,
        });
    }
    let mut mr_parent = Vec::with_capacity(count);
    for _ in 0..count {
        mr_parent.push(cur.u32()?);
    }
    Ok(Cdawg::from_parts(nodes, sink, n, synthetic, mr_parent))
}

struct Cursor<'a> {
    buf: &'a [u8],
    at: usize,
}

impl Cursor<'_> {
    fn u8(&mut self) -> io::Result<u8> {
        let v = *self.buf.get(self.at).ok_or_else(|| bad("truncated CDAWG section"))?;
        self.at += 1;
        Ok(v)
    }

    fn u32(&mut self) -> io::Result<u32> {
        let s = self.buf.get(self.at..self.at + 4).ok_or_else(|| bad("truncated CDAWG section"))?;
        self.at += 4;
        Ok(u32::from_le_bytes(s.try_into().unwrap()))
    }

    fn u64(&mut self) -> io::Result<u64> {
        let s = self.buf.get(self.at..self.at + 8).ok_or_else(|| bad("truncated CDAWG section"))?;
        self.at += 8;
        Ok(u64::from_le_bytes(s.try_into().unwrap()))
    }
}
