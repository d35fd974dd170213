use std::path::PathBuf;

use hybrid_control::{ControlInstance, Election};
use hybrid_control_cli::run;
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn cli(args: &[&str]) -> (u8, String) {
    run(std::iter::once("hybrid-control").chain(args.iter().copied()))
}

const CCAC: &str = "type CCAC\nsystem hybrid:e_first,e_last\ndistinguished 0\ncandidates 0 2\nspoilers 1\nballot 2 > 1 > 0\n";

#[test]
fn plurality_winners() {
    let dir = TempDir::new().unwrap();
    let e = write(&dir, "e.txt", "candidates 1 2 3\nballot 1 > 2 > 3\nballot 1 > 3 > 2\nballot 2 > 1 > 3\n");
    let (code, out) = cli(&["winners", "--system", "plurality", "--election", e.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "winners: 1\n"));
    let (code, out) = cli(&["winners", "--system", "e_null", "--election", e.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "winners: none\n"));
}

#[test]
fn decide_adding_spoiler() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "ccac.txt", CCAC);
    for solver in ["brute", "poly"] {
        let (code, out) = cli(&["decide", "--instance", p.to_str().unwrap(), "--solver", solver]);
        assert_eq!((code, out.as_str()), (0, "YES witness add {1}\n"), "{solver}");
    }
}

#[test]
fn decide_budget_and_parse_errors() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "ccac.txt", CCAC);
    let (code, out) = cli(&["decide", "--instance", p.to_str().unwrap(), "--budget", "1"]);
    assert_eq!(code, 3, "{out}");
    let bad = write(&dir, "bad.txt", "type XYZ\n");
    assert_eq!(cli(&["decide", "--instance", bad.to_str().unwrap()]).0, 2);
    assert_eq!(cli(&["decide", "--instance", "/nonexistent/file"]).0, 2);
    assert_eq!(cli(&["winners", "--system", "hybrid:", "--election", p.to_str().unwrap()]).0, 2);
    assert_eq!(cli(&[]).0, 2);
}

#[test]
fn replay_suite() {
    let (code, out) = cli(&["suite", "replay"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("PASS 4/4\n"), "{out}");
}

#[test]
fn inheritance_suite_is_seeded() {
    let a = cli(&["suite", "inheritance", "--trials", "20", "--seed", "7"]);
    assert_eq!(a.0, 0, "{}", a.1);
    assert!(a.1.ends_with("PASS 20/20\n"));
    assert_eq!(a, cli(&["--seed", "7", "suite", "inheritance", "--trials", "20"]));
}

#[test]
fn anonymity_reports() {
    let (code, out) = cli(&["anonymity", "--system", "condorcet", "--trials", "500"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("PASS condorcet"));
    let (code, out) = cli(&["anonymity", "--system", "hybrid:e_first,e_last", "--trials", "500"]);
    assert_eq!(code, 1);
    assert!(out.contains("expected") && out.contains("FAIL"), "{out}");
}

#[test]
fn reduce_writes_parsable_instances() {
    let dir = TempDir::new().unwrap();
    let x3c = write(&dir, "x.txt", "base 1 2 3 4 5 6\nset 1 2 3\nset 4 5 6\nset 1 2 4\n");
    let out_path = dir.path().join("dcav.txt");
    let (code, out) = cli(&[
        "reduce", "--from", "x3c", "--to", "DCAV", "--input", x3c.to_str().unwrap(), "--output", out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    let inst = ControlInstance::parse(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(inst.limit(), Some(2));
    assert_eq!(ControlInstance::parse(&inst.to_string()).unwrap(), inst);

    let graph = write(&dir, "g.txt", "vertices 3\nedge 1 2\nedge 2 3\n");
    let (code, out) = cli(&["reduce", "--from", "vc", "--to", "CCDC", "--input", graph.to_str().unwrap(), "--k", "1"]);
    assert_eq!(code, 0, "{out}");
    let inst = ControlInstance::parse(&out).unwrap();
    assert_eq!(inst.system().to_string(), "hybrid:e0_solo,e1_prefix");
    let (code, _) = cli(&["reduce", "--from", "vc", "--to", "CCDC", "--input", graph.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn verify_reductions() {
    let dir = TempDir::new().unwrap();
    let square = write(&dir, "sq.txt", "vertices 4\nedge 1 2\nedge 2 3\nedge 3 4\nedge 1 4\n");
    let (code, out) = cli(&["verify", "--from", "ehvc", "--input", square.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("PASS 7/7\n"), "{out}");

    let empty = write(&dir, "empty.txt", "base 1 2 3\n");
    let (code, out) = cli(&["verify", "--from", "x3c", "--input", empty.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("DCPV-TE: source NO target YES FAIL"), "{out}");
    assert!(out.ends_with("FAIL 2/3\n"));
}

#[test]
fn help_lists_grammar_and_codes() {
    let (code, out) = cli(&["--help"]);
    assert_eq!(code, 0);
    for needle in ["hybrid:<name>", "hybrid_base:", "CCAC", "DCRPC-TP", "CCPV-TE", "--seed"] {
        assert!(out.contains(needle), "{needle} missing from help");
    }
}

#[test]
fn election_round_trip() {
    let e = Election::from_ids(&[0, 3, 5], &[&[5, 0, 3], &[3, 5, 0]]).unwrap();
    assert_eq!(Election::parse(&e.to_string()).unwrap(), e);
}
