//! End-to-end checks of the `bbwx` binary: exit codes, build reports, stats
//! CSVs, script handling, and persistence behavior.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bbwx() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bbwx"))
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    use std::io::Write;
    use std::process::Stdio;
    let mut cmd = bbwx();
    cmd.args(args);
    if stdin.is_some() {
        cmd.stdin(Stdio::piped());
    }
    cmd.stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn bbwx");
    if let Some(input) = stdin {
        child.stdin.as_mut().unwrap().write_all(input.as_bytes()).unwrap();
    }
    child.wait_with_output().expect("bbwx finishes")
}

fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, bytes).unwrap();
    p
}

#[test]
fn build_report_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(dir.path(), "banana.txt", b"banana");
    let out = run(&["build", input.to_str().unwrap()], None);
    assert!(out.status.success());
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.contains("maxreps=3"), "report: {report}");
    assert!(report.contains("n=7"));
    assert!(report.contains("bwt_runs=5"));

    // empty input
    let empty = write_file(dir.path(), "empty.txt", b"");
    let out = run(&["build", empty.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));

    // unreadable input
    let out = run(&["build", dir.path().join("missing.txt").to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));

    // alphabet overflow: all 256 byte values
    let all: Vec<u8> = (0..=255u8).collect();
    let big = write_file(dir.path(), "all.bin", &all);
    let out = run(&["build", big.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn build_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(dir.path(), "t.txt", b"mississippi");
    for flag in [&[][..], &["--with-cdawg"][..]] {
        let out_a = dir.path().join("a.bbwx");
        let out_b = dir.path().join("b.bbwx");
        for (path, _) in [(&out_a, 0), (&out_b, 1)] {
            let mut args = vec!["build", input.to_str().unwrap(), "--output", path.to_str().unwrap()];
            args.extend_from_slice(flag);
            assert!(run(&args, None).status.success());
        }
        assert_eq!(fs::read(&out_a).unwrap(), fs::read(&out_b).unwrap(), "byte-identical builds");
    }
}

#[test]
fn fasta_build() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(dir.path(), "r.fa", b">r1\nAC\n>r2\nGT\n");
    let out = run(&["build", input.to_str().unwrap(), "--format", "fasta"], None);
    assert!(out.status.success());
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.contains("n=5"));
    assert!(report.contains("records=2"));
}

#[test]
fn query_examples() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(dir.path(), "banana.txt", b"banana");
    assert!(run(&["build", input.to_str().unwrap()], None).status.success());
    let index = dir.path().join("banana.txt.bbwx");
    let script = "FIND ana\nSTART\nCTR L\nFIND an\nDBG INC FREQ\nnonsense\nFIND zzz\n";
    let out = run(&["query", index.to_str().unwrap()], Some(script));
    assert!(out.status.success());
    let lines: Vec<&str> = std::str::from_utf8(&out.stdout).unwrap().lines().collect();
    assert_eq!(lines[0], "OK fwd=[3,4] rev=[3,4] len=3 freq=2");
    assert_eq!(lines[1], "OK fwd=[1,7] rev=[1,7] len=0 freq=7");
    assert_eq!(lines[2], "ERR EMPTY");
    assert_eq!(lines[4], "OK fwd=[3,4] rev=[3,4] len=3 freq=2"); // an -> ana
    assert_eq!(lines[5], "ERR SYNTAX");
    assert_eq!(lines[6], "ERR SYMBOL");
    assert_eq!(lines.len(), 7, "one line per nonempty command");
}

#[test]
fn stats_examples_and_range_check() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(dir.path(), "banana.txt", b"banana");
    assert!(run(&["build", input.to_str().unwrap()], None).status.success());
    let index = dir.path().join("banana.txt.bbwx");
    let prefix = dir.path().join("stats");
    let out = run(
        &[
            "stats",
            index.to_str().unwrap(),
            "--kmin",
            "1",
            "--kmax",
            "3",
            "--tau",
            "2",
            "--out",
            prefix.to_str().unwrap(),
        ],
        None,
    );
    assert!(out.status.success());
    let per_k = fs::read_to_string(dir.path().join("stats_per_k.csv")).unwrap();
    let lines: Vec<&str> = per_k.lines().collect();
    assert_eq!(lines[0], "k,distinct_kmers,repeated_kmers");
    assert_eq!(lines[1], "1,3,2"); // a,b,n; a and n repeat
    assert_eq!(lines[2], "2,3,2"); // an,ba,na; an and na repeat
    assert_eq!(lines[3], "3,3,1"); // ana,ban,nan; ana repeats

    let summary = fs::read_to_string(dir.path().join("stats_summary.csv")).unwrap();
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(
        lines[0],
        "maxreps,maxrep_left_ext,maxrep_right_ext,cdawg_nodes,cdawg_arcs,bwt_runs,rev_bwt_runs,maxreps_ge_tau,arcs_ge_tau"
    );
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields[0], "3"); // maxreps
    assert_eq!(fields[7], "1"); // maxreps_ge_tau at tau=2: only "ana"

    // kmax beyond n
    let out = run(
        &["stats", index.to_str().unwrap(), "--kmax", "99", "--out", prefix.to_str().unwrap()],
        None,
    );
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn save_load_round_trip_matches_fresh_queries() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(dir.path(), "t.txt", b"abracadabra_abracadabra");
    // with and without persisted CDAWG sections: identical query behavior
    let with = dir.path().join("with.bbwx");
    let without = dir.path().join("without.bbwx");
    assert!(run(
        &["build", input.to_str().unwrap(), "--output", with.to_str().unwrap(), "--with-cdawg"],
        None
    )
    .status
    .success());
    assert!(run(&["build", input.to_str().unwrap(), "--output", without.to_str().unwrap()], None)
        .status
        .success());
    let script = "FIND abra\nCTR L\nCTR R\nENUM R\nENUM L\nFREQ\nMAXIMAL L\nENGINE CDAWG\nFIND abra\nCTR L\nCTR R\nENUM R\nDBG NODE ra\nDBG ARCS R\nDBG INC MAXREP\nDBG DEC FREQ\nMS abracadxbra\n";
    let a = run(&["query", with.to_str().unwrap()], Some(script));
    let b = run(&["query", without.to_str().unwrap()], Some(script));
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn unknown_sections_are_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(dir.path(), "t.txt", b"banana");
    assert!(run(&["build", input.to_str().unwrap()], None).status.success());
    let index = dir.path().join("t.txt.bbwx");
    // append a section with an unrecognized tag
    let mut bytes = fs::read(&index).unwrap();
    bytes.extend_from_slice(b"ZZZZ");
    bytes.extend_from_slice(&4u64.to_le_bytes());
    bytes.extend_from_slice(&[1, 2, 3, 4]);
    fs::write(&index, bytes).unwrap();
    let out = run(&["query", index.to_str().unwrap()], Some("FIND ana\n"));
    assert!(out.status.success());
    assert_eq!(
        std::str::from_utf8(&out.stdout).unwrap().trim(),
        "OK fwd=[3,4] rev=[3,4] len=3 freq=2"
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("skipping unknown section"));
}

#[test]
fn engines_give_identical_script_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(dir.path(), "t.txt", b"CGCGCGAGAGCGAGA");
    assert!(run(&["build", input.to_str().unwrap(), "--with-cdawg"], None).status.success());
    let index = dir.path().join("t.txt.bbwx");
    let body = "FIND CGA\nCTR L\nENUM R\nENUM L\nFREQ\nMAXIMAL R\nDBG NODE GA\nDBG ARCS R\nDBG ARCS L COMPLETE\nDBG FOLLOW R G\nDBG INC FREQ\nDBG DEC UNIT\nDBG DEC MAXREP\nDBG INC MAXREP\nMS GAGCG\nFIND CGC\nCTR R\nCTR L\n";
    let bwt = run(&["query", index.to_str().unwrap()], Some(&format!("ENGINE BWT\n{body}")));
    let cdawg = run(&["query", index.to_str().unwrap()], Some(&format!("ENGINE CDAWG\n{body}")));
    assert!(bwt.status.success() && cdawg.status.success());
    assert_eq!(
        String::from_utf8(bwt.stdout).unwrap(),
        String::from_utf8(cdawg.stdout).unwrap(),
        "engine outputs must be byte-identical"
    );
}
