use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn linrew(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linrew")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn nf_of_a_term() {
    let f = fixture("xyz.lp");
    let o = linrew(&["nf", path(&f), "--term", "x y z x"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x^4 + y^3 x + z^3 x");
}

#[test]
fn check_exit_codes() {
    assert_eq!(linrew(&["check", path(&fixture("xyz.lp"))]).status.code(), Some(0));
    let o = linrew(&["check", path(&fixture("xy.lp"))]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("witness: y^3"));
}

#[test]
fn complete_adds_one_rule_and_writes_a_convergent_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("xy_complete.lp");
    let o = linrew(&["complete", path(&fixture("xy.lp")), "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let added: Vec<String> = stdout(&o).lines().filter(|l| l.starts_with("added ")).map(String::from).collect();
    assert_eq!(added, ["added gamma : y x^2 -> x^3"]);
    let written = std::fs::read_to_string(&out).unwrap();
    assert!(written.contains("convergent\n"));
    assert_eq!(linrew(&["check", path(&out)]).status.code(), Some(0));
}

#[test]
fn complete_reports_a_tripped_bound() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.lp");
    let o = linrew(&["complete", path(&fixture("xy.lp")), "--max-rules", "2", "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!out.exists());
}

#[test]
fn koszul_verdicts() {
    let o = linrew(&["koszul", path(&fixture("pp05.lp"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("verdict: Koszul-certified (concentrated-after-collapse"));
    let o = linrew(&["koszul", path(&fixture("xy.lp"))]);
    assert!(stdout(&o).starts_with("verdict: Not-Koszul (witness Tor_3,(4) = 1)"));
    let o = linrew(&["koszul", path(&fixture("pp_symbolic.lp"))]);
    assert!(stdout(&o).starts_with("verdict: Koszul-certified (concentrated-after-collapse"));
}

#[test]
fn branchings_of_higher_fold() {
    let o = linrew(&["branchings", path(&fixture("pp05.lp")), "--fold", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("critical 3-fold branchings up to degree 5: 4"));
}

#[test]
fn hilbert_counts() {
    let o = linrew(&["hilbert", path(&fixture("xy_single.lp")), "--dmax", "4"]);
    let counts: Vec<String> = stdout(&o).lines().map(|l| l.split('\t').nth(1).unwrap().to_string()).collect();
    assert_eq!(counts, ["1", "2", "3", "4", "5"]);
}

#[test]
fn pbw_accepts_the_standard_basis() {
    let o = linrew(&["pbw", path(&fixture("xy_single.lp")), "--basis-file", path(&fixture("xy_single.basis")), "--dmax", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PBW basis: yes"));
}

#[test]
fn input_errors_exit_with_2_and_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lp");
    std::fs::write(&bad, "generators x y\nrule a : x y -> q\n").unwrap();
    let o = linrew(&["check", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.lp:2:17: unknown generator 'q'"), "{err}");
    assert_eq!(linrew(&["check", path(&dir.path().join("missing.lp"))]).status.code(), Some(2));
}

#[test]
fn json_reports_carry_the_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tor.json");
    let o = linrew(&["--format", "json", "tor", path(&fixture("xyz.lp")), "--kmax", "3", "--dmax", "6", "--json", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "linrew-report");
    assert_eq!(v["version"], 1);
    assert_eq!(v["command"], "tor");
    assert_eq!(v["system"]["rules"][0], "gamma : x y z -> x^3 + y^3 + z^3");
    let entries = v["tor"]["entries"].as_array().unwrap();
    let nonzero: Vec<(u64, u64, u64)> = entries
        .iter()
        .filter(|e| e["hi"].as_u64().unwrap() > 0)
        .map(|e| (e["k"].as_u64().unwrap(), e["i"].as_u64().unwrap(), e["lo"].as_u64().unwrap()))
        .collect();
    assert_eq!(nonzero, [(0, 0, 1), (1, 1, 3), (2, 3, 1)]);
    let file: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(file, v);
}

#[test]
fn selfcheck_runs_clean() {
    let o = linrew(&["selfcheck", "--seed", "5", "--cases", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 failures"));
}
