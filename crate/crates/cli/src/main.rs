//! `bbwx`: build, persist and query bidirectional BWT indexes.

mod index_file;
mod session;
mod stats;

use bbwx::cdawg::CdawgIndex;
use bbwx::textcore::InputFormat;
use bbwx::{BwtIndex, Error, Text};
use clap::{Parser, Subcommand, ValueEnum};
use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bbwx", version, about = "Bidirectional BWT index with contraction, a CDAWG engine, and an infinite-order de Bruijn graph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Raw,
    Fasta,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from a raw or FASTA file.
    Build {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "raw")]
        format: Format,
        /// Output path; defaults to the input path with `.bbwx` appended.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Persist the CDAWG engine sections as well.
        #[arg(long)]
        with_cdawg: bool,
    },
    /// Emit per-k and summary statistics CSVs.
    Stats {
        index: PathBuf,
        #[arg(long, default_value_t = 1)]
        kmin: usize,
        #[arg(long)]
        kmax: usize,
        #[arg(long, default_value_t = 0)]
        tau: usize,
        /// Output prefix: writes `<prefix>_per_k.csv` and `<prefix>_summary.csv`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a batch query script (a file, or stdin when omitted).
    Query {
        index: PathBuf,
        script: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Build { input, format, output, with_cdawg } => build(input, format, output, with_cdawg),
        Command::Stats { index, kmin, kmax, tau, out } => run_stats(index, kmin, kmax, tau, out),
        Command::Query { index, script } => run_query(index, script),
    }
}

fn build(input: PathBuf, format: Format, output: Option<PathBuf>, with_cdawg: bool) -> ExitCode {
    let bytes = match fs::read(&input) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", input.display());
            return ExitCode::from(2);
        }
    };
    let effective = match format {
        // a trailing newline is an editor artifact, not part of the text
        Format::Raw => {
            let mut b = bytes;
            if b.last() == Some(&b'\n') {
                b.pop();
                if b.last() == Some(&b'\r') {
                    b.pop();
                }
            }
            b
        }
        Format::Fasta => bytes,
    };
    let kind = match format {
        Format::Raw => InputFormat::Raw,
        Format::Fasta => InputFormat::Fasta,
    };
    let text = match Text::build(&effective, kind) {
        Ok(t) => t,
        Err(Error::InvalidInput(msg)) if msg.contains("255") => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let records = text.records().len();
    let idx = BwtIndex::build(text);
    let cdawg = CdawgIndex::build(idx.text(), idx.structures(), idx.topologies());

    let out_path = output.unwrap_or_else(|| {
        let mut p = input.as_os_str().to_owned();
        p.push(".bbwx");
        PathBuf::from(p)
    });
    let file = match fs::File::create(&out_path) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: cannot write {}: {e}", out_path.display());
            return ExitCode::from(2);
        }
    };
    let mut w = BufWriter::new(file);
    let stored = if with_cdawg { Some(&cdawg) } else { None };
    if let Err(e) = index_file::save(&mut w, &idx, stored).and_then(|()| w.flush()) {
        eprintln!("error: write failed: {e}");
        return ExitCode::from(2);
    }

    let mut report = String::new();
    report.push_str(&format!("n={}\n", idx.n()));
    report.push_str(&format!("sigma={}\n", idx.text().sigma()));
    if records > 0 {
        report.push_str(&format!("records={records}\n"));
    }
    report.push_str(&format!("maxreps={}\n", cdawg.fwd.max_rep_count()));
    report.push_str(&format!("bwt_runs={}\n", cdawg.fwd_rlbwt.run_count()));
    report.push_str(&format!("rev_bwt_runs={}\n", cdawg.bwd_rlbwt.run_count()));
    report.push_str(&format!("cdawg_nodes={}\n", cdawg.fwd.node_count()));
    report.push_str(&format!("cdawg_arcs={}\n", cdawg.fwd.arc_count()));
    report.push_str(&format!("rev_cdawg_nodes={}\n", cdawg.bwd.node_count()));
    report.push_str(&format!("rev_cdawg_arcs={}\n", cdawg.bwd.arc_count()));
    report.push_str(&format!("index={}\n", out_path.display()));
    print_or_quit(&report);
    ExitCode::SUCCESS
}

/// Writes to stdout, treating a closed pipe as a normal early exit.
fn print_or_quit(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(s.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: stdout: {e}");
        std::process::exit(2);
    }
}

fn load(path: &Path) -> Result<index_file::LoadedIndex, ExitCode> {
    let file = match fs::File::open(path) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return Err(ExitCode::from(2));
        }
    };
    let mut reader = std::io::BufReader::new(file);
    index_file::load(&mut reader).map_err(|e| {
        eprintln!("error: cannot load {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn run_stats(index: PathBuf, kmin: usize, kmax: usize, tau: usize, out: PathBuf) -> ExitCode {
    let mut loaded = match load(&index) {
        Ok(l) => l,
        Err(code) => return code,
    };
    let n = loaded.index.n();
    if kmin < 1 || kmin > kmax || kmax > n {
        eprintln!("error: k range must satisfy 1 <= kmin <= kmax <= {n}");
        return ExitCode::from(4);
    }
    let rows = stats::per_k_counts(&loaded.index, kmin, kmax);
    loaded.ensure_cdawg();
    let summary = stats::summary(&loaded.index, loaded.cdawg.as_ref().unwrap(), tau);

    let per_k_path = suffixed(&out, "_per_k.csv");
    let summary_path = suffixed(&out, "_summary.csv");
    let write = |path: &Path, content: String| -> Result<(), ExitCode> {
        fs::write(path, content).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            ExitCode::from(2)
        })
    };
    if let Err(code) = write(&per_k_path, stats::per_k_csv(&rows)) {
        return code;
    }
    if let Err(code) = write(&summary_path, stats::summary_csv(&summary)) {
        return code;
    }
    print_or_quit(&format!("per_k={}\nsummary={}\n", per_k_path.display(), summary_path.display()));
    ExitCode::SUCCESS
}

fn suffixed(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn run_query(index: PathBuf, script: Option<PathBuf>) -> ExitCode {
    let mut loaded = match load(&index) {
        Ok(l) => l,
        Err(code) => return code,
    };
    let input = match script {
        Some(path) => match fs::read_to_string(&path) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => {
            let mut buf = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                eprintln!("error: cannot read stdin: {e}");
                return ExitCode::from(2);
            }
            buf
        }
    };
    loaded.ensure_cdawg();
    let mut session = session::Session::new(&loaded.index, loaded.cdawg.as_ref().unwrap());
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for line in input.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let reply = session.run_line(line);
        if let Err(e) = writeln!(out, "{reply}") {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: stdout: {e}");
            return ExitCode::from(2);
        }
    }
    if let Err(e) = out.flush() {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: stdout: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::SUCCESS
}
