use std::io::Write;
use std::process::{Command, Output};

fn grlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grlie")).args(args).output().expect("run grlie")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn poincare_of_vp3() {
    let o = grlie(&["poincare", "--family", "vP", "--n", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 + 6t + 6t^2\n");
    let o = grlie(&["poincare", "--family", "vP4plus"]);
    assert_eq!(stdout(&o), "1 + 6t + 7t^2 + t^3\n");
    let o = grlie(&["poincare", "--family", "P", "--n", "4", "--format", "csv"]);
    assert_eq!(stdout(&o), "degree,betti\n0,1\n1,6\n2,11\n3,6\n");
}

#[test]
fn chen_ranks_csv() {
    let o = grlie(&["chen-ranks", "--family", "vP3", "--max-degree", "4", "--format", "csv", "-q"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "k,theta\n2,9\n3,34\n4,84\n");
}

#[test]
fn resonance_lines() {
    let o = grlie(&["resonance", "--family", "vP4plus", "--depth", "2", "--format", "json", "-q"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["verified_subspaces"], 13);
}

#[test]
fn progress_goes_to_stderr() {
    let o = grlie(&["chen-ranks", "--family", "F2", "--max-degree", "4", "--format", "csv"]);
    assert!(!o.stderr.is_empty());
    assert_eq!(stdout(&o), "k,theta\n2,1\n3,2\n4,3\n");
}

#[test]
fn deterministic_output() {
    let args = ["lcs-ranks", "--family", "vP3", "--method", "hall", "--max-degree", "4", "--seed", "17", "--format", "json"];
    assert_eq!(grlie(&args).stdout, grlie(&args).stdout);
}

#[test]
fn malformed_presentation_exits_2() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(b"{\"generators\": [\"x\"], \"relators\": [[\"y\"]]}").unwrap();
    let o = grlie(&["chen-ranks", "--presentation", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));

    let mut g = tempfile::NamedTempFile::new().unwrap();
    g.write_all(b"not json").unwrap();
    let o = grlie(&["poincare", "--presentation", g.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = grlie(&["poincare", "--family", "Q7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn presentation_file_roundtrip() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(b"{\"generators\": [\"a\", \"b\", \"c\"], \"relators\": [[\"a\", \"b\", \"a^-1\", \"b^-1\"]]}").unwrap();
    let p = f.path().to_str().unwrap();
    let o = grlie(&["chen-ranks", "--presentation", p, "--max-degree", "4", "--format", "csv", "-q"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // Z^2 * Z
    assert_eq!(stdout(&o), "k,theta\n2,2\n3,5\n4,9\n");
    let o = grlie(&["mildness", "--presentation", p, "-q"]);
    assert!(stdout(&o).contains("mild through degree 6"));
}

#[test]
fn budget_exceeded_exits_3() {
    let o = grlie(&["chen-ranks", "--family", "vP3", "--cell-budget", "0", "-q"]);
    assert_eq!(o.status.code(), Some(3));
    let o = grlie(&["lcs-ranks", "--family", "F4", "--method", "hall", "--max-degree", "12", "--hall-budget", "100", "-q"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_subset() {
    let o = grlie(&["verify", "--criteria", "1,2,3", "-q"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.starts_with("[PASS]")).count(), 3);
    let o = grlie(&["verify", "--criteria", "99"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn egf_and_chen_formula() {
    let o = grlie(&["egf-check", "--family", "P", "--n", "4"]);
    assert!(stdout(&o).contains("holds through u^7"));
    let o = grlie(&["chen-formula", "--family", "vP4plus", "--components", "4:1", "--max-degree", "5", "-q"]);
    assert!(stdout(&o).contains("fails at k = 3"));
    let o = grlie(&["chen-formula", "--family", "Pbar4", "--components", "2:5", "-q"]);
    assert!(stdout(&o).contains("holds"));
}
