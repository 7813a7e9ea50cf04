use std::path::PathBuf;
use std::process::{Command, Output};

use kh::parse_json_lines;
use khovanov::algebra::Ring;
use khovanov::cube::Theory;
use khovanov::diagram::table::bundled_table;
use khovanov::diagram::Diagram;
use khovanov::homology::khovanov;

const TREFOIL: &str = "X(1,5,2,4);X(3,1,4,6);X(5,3,6,2)";

fn kh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn table_path() -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", "knots_upto10.pd"].iter().collect();
    p.to_string_lossy().into_owned()
}

fn small_table() -> TempTable {
    let rows: String = bundled_table()
        .into_iter()
        .filter(|e| ["3_1", "4_1", "5_2", "6_1", "L2a1{0}"].contains(&e.name.as_str()))
        .map(|e| format!("{} | {} | {} | {}\n", e.name, e.pd, e.signature, if e.alternating { "Y" } else { "N" }))
        .collect();
    TempTable::new(&rows)
}

struct TempTable(PathBuf);

impl TempTable {
    fn new(contents: &str) -> Self {
        let n = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).unwrap().as_nanos();
        let p = std::env::temp_dir().join(format!("kh-table-{}-{n}.pd", std::process::id()));
        std::fs::write(&p, contents).unwrap();
        TempTable(p)
    }

    fn path(&self) -> &str {
        self.0.to_str().unwrap()
    }
}

impl Drop for TempTable {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

#[test]
fn trefoil_table_over_q() {
    let o = kh(&["compute", "--pd", TREFOIL, "--theory", "kh", "--ring", "q"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.trim_end().ends_with(" Q")));
}

#[test]
fn reduced_unknot() {
    let o = kh(&["compute", "--pd", "U(1)", "--theory", "kh", "--ring", "f2", "--reduced", "--out", "json-lines"]);
    assert!(o.status.success());
    let parsed = parse_json_lines(&stdout(&o)).unwrap();
    assert_eq!(parsed.len(), 1);
    assert_eq!(parsed[0].1.support(), vec![(0, 0)]);
    assert_eq!(parsed[0].1.rank(0, 0), 1);
}

#[test]
fn json_lines_round_trip() {
    let t = small_table();
    let o = kh(&["compute", "--table", t.path(), "--ring", "z", "--out", "json-lines"]);
    assert!(o.status.success());
    let parsed = parse_json_lines(&stdout(&o)).unwrap();
    let names: Vec<&str> = parsed.iter().map(|(m, _)| m.diagram.as_str()).collect();
    assert_eq!(names, ["3_1", "4_1", "5_2", "6_1", "L2a1{0}"]);
    for (meta, g) in parsed {
        let e = bundled_table().into_iter().find(|e| e.name == meta.diagram).unwrap();
        let want = khovanov(&e.diagram().unwrap(), Theory::Ordinary, Ring::Z, false).unwrap();
        assert_eq!(g, want, "{}", meta.diagram);
    }
}

#[test]
fn output_is_deterministic() {
    let t = small_table();
    let args = ["compute", "--table", t.path(), "--ring", "z", "--out", "json-lines", "--threads", "3"];
    let (a, b) = (kh(&args), kh(&args));
    assert_eq!(a.stdout, b.stdout);
    let text = kh(&["compute", "--table", t.path(), "--theory", "odd", "--ring", "q"]);
    assert_eq!(text.stdout, kh(&["compute", "--table", t.path(), "--theory", "odd", "--ring", "q"]).stdout);
}

#[test]
fn verify_whole_table() {
    let o = kh(&["verify", "--table", &table_path(), "--check", "euler"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), bundled_table().len());
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn verify_all_checks() {
    let t = small_table();
    let o = kh(&["verify", "--table", t.path(), "--check", "all"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 5 * 6);
}

#[test]
fn s_invariant_verb() {
    let o = kh(&["s-invariant", "--pd", TREFOIL]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("s = 2"));
    let mirror = Diagram::parse_pd(TREFOIL).unwrap().mirror().to_pd_string();
    let o = kh(&["s-invariant", "--pd", &mirror, "--theory", "barnatan"]);
    assert!(stdout(&o).contains("s = -2"));
}

#[test]
fn oracle_verb() {
    let o = kh(&["oracle", "--pd", TREFOIL, "--out", "json-lines"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["jones"], "q + q^3 + q^5 - q^9");
    assert_eq!(v["agree"], true);
    assert_eq!(v["width"], 1);
}

#[test]
fn failures_exit_nonzero() {
    let bad = kh(&["compute", "--pd", "X(1,4,2,3);X(3,6,4,5);X(5,2,6,1)"]);
    assert!(!bad.status.success());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("planar"));
    assert!(!kh(&["compute", "--pd", TREFOIL, "--theory", "lee", "--ring", "f2"]).status.success());
    assert!(!kh(&["compute", "--pd", TREFOIL, "--max-crossings", "2"]).status.success());
    assert!(!kh(&["s-invariant", "--pd", "U(2)"]).status.success());
    assert!(!kh(&["compute"]).status.success());
}
