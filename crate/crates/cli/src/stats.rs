//! Corpus statistics: per-order k-mer counts from one extend/contract sweep
//! per k, and a summary over maximal repeats, CDAWG sizes, BWT runs and
//! τ-pruned counts.

use bbwx::biindex::{BwtIndex, Side};
use bbwx::cdawg::CdawgIndex;

pub struct PerK {
    pub k: usize,
    pub distinct: usize,
    pub repeated: usize,
}

pub struct Summary {
    pub maxreps: usize,
    pub maxrep_left_ext: usize,
    pub maxrep_right_ext: usize,
    pub cdawg_nodes: usize,
    pub cdawg_arcs: usize,
    pub bwt_runs: usize,
    pub rev_bwt_runs: usize,
    pub maxreps_ge_tau: usize,
    pub arcs_ge_tau: usize,
}

/// Counts distinct and repeated k-mers for each order by sliding one
/// descriptor across the text: contract on the left, extend on the right.
/// Windows containing the terminator never arise since the sweep stops at the
/// last full window.
pub fn per_k_counts(idx: &BwtIndex, kmin: usize, kmax: usize) -> Vec<PerK> {
    let symbols = idx.text().symbols();
    let text_len = idx.text().len() - 1;
    let mut rows = Vec::with_capacity(kmax - kmin + 1);
    let mut stamp = vec![0u32; idx.n() + 1];
    let mut epoch = 0u32;
    for k in kmin..=kmax {
        epoch += 1;
        let mut distinct = 0usize;
        let mut repeated = 0usize;
        if k >= 1 && k <= text_len {
            let mut d = idx.empty_descriptor();
            for &c in &symbols[..k] {
                d = idx.extend(&d, Side::Right, c).expect("text window occurs");
            }
            let mut p = 1usize;
            loop {
                // a k-mer is counted at its canonical row, the interval start
                let row = d.fwd.lo();
                if stamp[row] != epoch {
                    stamp[row] = epoch;
                    distinct += 1;
                    if d.freq() >= 2 {
                        repeated += 1;
                    }
                }
                if p + k > text_len {
                    break;
                }
                d = idx.contract(&d, Side::Left).expect("window is nonempty");
                d = idx.extend(&d, Side::Right, symbols[p + k - 1]).expect("text window occurs");
                p += 1;
            }
        }
        rows.push(PerK { k, distinct, repeated });
    }
    rows
}

pub fn summary(idx: &BwtIndex, cdawg: &CdawgIndex, tau: usize) -> Summary {
    let bwt = &idx.structures().bwt;
    let mut left_ext = 0usize;
    let mut right_ext = 0usize;
    for (class, node) in cdawg.fwd.nodes.iter().enumerate() {
        if class as u32 == cdawg.fwd.sink || (class == 0 && cdawg.fwd.synthetic_root) {
            continue;
        }
        right_ext += node.arcs.len();
        left_ext += bwt.distinct_in_range(node.first as usize, node.last as usize).len();
    }
    let (pruned_nodes, pruned_arcs) = cdawg.fwd.pruned_counts(tau);
    Summary {
        maxreps: cdawg.fwd.max_rep_count(),
        maxrep_left_ext: left_ext,
        maxrep_right_ext: right_ext,
        cdawg_nodes: cdawg.fwd.node_count(),
        cdawg_arcs: cdawg.fwd.arc_count(),
        bwt_runs: cdawg.fwd_rlbwt.run_count(),
        rev_bwt_runs: cdawg.bwd_rlbwt.run_count(),
        maxreps_ge_tau: pruned_nodes - 1,
        arcs_ge_tau: pruned_arcs,
    }
}

pub fn per_k_csv(rows: &[PerK]) -> String {
    let mut out = String::from("k,distinct_kmers,repeated_kmers\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.k, r.distinct, r.repeated));
    }
    out
}

pub fn summary_csv(s: &Summary) -> String {
    let mut out = String::from(
        "maxreps,maxrep_left_ext,maxrep_right_ext,cdawg_nodes,cdawg_arcs,bwt_runs,rev_bwt_runs,maxreps_ge_tau,arcs_ge_tau\n",
    );
    out.push_str(&format!(
        "{},{},{},{},{},{},{},{},{}\n",
        s.maxreps,
        s.maxrep_left_ext,
        s.maxrep_right_ext,
        s.cdawg_nodes,
        s.cdawg_arcs,
        s.bwt_runs,
        s.rev_bwt_runs,
        s.maxreps_ge_tau,
        s.arcs_ge_tau
    ));
    out
}
