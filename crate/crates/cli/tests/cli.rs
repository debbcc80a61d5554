use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn dofkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dofkit"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn floats(v: &serde_json::Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

const SECTION_TWO: &str = r#"{"values": [1, 0.9, 0.85, 0.5, 0.1, 0.05, 0.0005],
    "provenance": ["exact", "exact", "exact", "exact", "exact", "exact", "exact"]}"#;
const FIG_TWO: &str = r#"{"values": [1.0, 0.98, 0.96, 0.94, 0.92, 0.9, 0.8, 0.4, 0.1],
    "provenance": ["exact", "exact", "exact", "exact", "exact", "exact", "exact", "exact", "exact"]}"#;

#[test]
fn profile_of_harmonic_diagonal() {
    let ws = Workspace::new();
    let spec = ws.file("h.json", r#"{"generator": "harmonic_diag", "n": 3}"#);
    let doc = json(&dofkit(&["profile", "--spec", arg(&spec), "--p-max", "3"]));
    let values = floats(&doc["profile"]["values"]);
    assert_eq!(values.len(), 3);
    for (v, e) in values.iter().zip([1.0, 0.5, 1.0 / 3.0]) {
        assert!((v - e).abs() < 1e-15);
    }
    assert_eq!(doc["meta"]["seed"], 0);
    assert_eq!(doc["profile"]["provenance"][1], "upper_bound");
}

#[test]
fn profile_of_zero_and_rank_one_operators() {
    let ws = Workspace::new();
    let zero = ws.file(
        "z.json",
        r#"{"m": 2, "n": 2, "matrix": [0, 0, 0, 0],
            "domain_norm": {"kind": "l2"}, "codomain_norm": {"kind": "l2"}}"#,
    );
    let doc = json(&dofkit(&["profile", "--spec", arg(&zero)]));
    assert!(doc["profile"]["values"].as_array().unwrap().is_empty());

    let r = ws.file("r.json", r#"{"generator": "rank_one_harmonic", "n": 4}"#);
    let doc = json(&dofkit(&["profile", "--spec", arg(&r), "--p-max", "2"]));
    assert_eq!(floats(&doc["profile"]["values"]), vec![0.75]);
}

#[test]
fn profile_csv_file_and_stdout() {
    let ws = Workspace::new();
    let spec = ws.file("h.json", r#"{"generator": "harmonic_diag", "n": 2}"#);
    let csv = ws.path("out.csv");
    let doc = json(&dofkit(&["profile", "--spec", arg(&spec), "--csv", arg(&csv)]));
    assert!(doc.get("profile").is_some());
    let expected = "m,epsilon_m,provenance\n1,1.00000000000,exact\n2,0.500000000000,upper_bound\n";
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), expected);
    assert_eq!(stdout(&dofkit(&["profile", "--spec", arg(&spec), "--csv", "-"])), expected);
}

#[test]
fn dof_queries() {
    let ws = Workspace::new();
    let s2 = ws.file("s2.json", SECTION_TWO);
    let f2 = ws.file("f2.json", FIG_TWO);
    let dof = |p: &Path, level: &str| json(&dofkit(&["dof", "--profile", arg(p), "--level", level]))["dof"].as_u64().unwrap();
    assert_eq!(dof(&s2, "0.3"), 4);
    assert_eq!(dof(&s2, "1.0"), 0);
    assert_eq!(dof(&f2, "0.75"), 7);
    assert_eq!(dof(&f2, "0.100000001"), 8);

    let spec = ws.file("h.json", r#"{"generator": "harmonic_diag", "n": 3}"#);
    let doc = json(&dofkit(&["dof", "--spec", arg(&spec), "--level", "0.4"]));
    assert_eq!(doc["dof"], 2);

    let bad = dofkit(&["dof", "--profile", arg(&s2), "--level", "0"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn profile_documents_can_be_fed_back() {
    let ws = Workspace::new();
    let spec = ws.file("h.json", r#"{"generator": "harmonic_diag", "n": 3}"#);
    let doc = stdout(&dofkit(&["profile", "--spec", arg(&spec)]));
    let saved = ws.file("p.json", &doc);
    let out = json(&dofkit(&["dof", "--profile", arg(&saved), "--level", "0.4"]));
    assert_eq!(out["dof"], 2);
}

#[test]
fn essdim_reports() {
    let ws = Workspace::new();
    let s2 = ws.file("s2.json", SECTION_TWO);
    let f2 = ws.file("f2.json", FIG_TWO);
    let flat = ws.file(
        "flat.json",
        r#"{"values": [0.5, 0.5, 0.5], "provenance": ["exact", "exact", "exact"]}"#,
    );

    let r = json(&dofkit(&["essdim", "--profile", arg(&s2)]))["report"].clone();
    assert_eq!(r["ess_dim"], 4);
    assert!((r["e_table"]["4"].as_f64().unwrap() - 0.4).abs() < 1e-12);

    let r = json(&dofkit(&["essdim", "--profile", arg(&f2)]))["report"].clone();
    assert_eq!(r["ess_dim"], 7);
    let r = json(&dofkit(&["essdim", "--profile", arg(&f2), "--order", "2"]))["report"].clone();
    assert_eq!(r["ess_dim"], 8);
    assert!((r["e_table"]["8"].as_f64().unwrap() - 0.7).abs() < 1e-12);

    let r = json(&dofkit(&["essdim", "--profile", arg(&flat)]))["report"].clone();
    assert_eq!(r["ess_dim"], 3);

    let too_large = dofkit(&["essdim", "--profile", arg(&flat), "--order", "3"]);
    assert_eq!(too_large.status.code(), Some(5));
}

#[test]
fn dof_function_samples() {
    let ws = Workspace::new();
    let p = ws.file(
        "p.json",
        r#"{"values": [1, 1, 0.5], "provenance": ["exact", "exact", "exact"]}"#,
    );
    let doc = json(&dofkit(&["dof-function", "--profile", arg(&p)]));
    assert_eq!(floats(&doc["step"]["breakpoints"]), vec![1.0, 0.5]);
    assert_eq!(doc["step"]["counts"], serde_json::json!([0, 2, 3]));
    let csv = stdout(&dofkit(&["dof-function", "--profile", arg(&p), "--csv", "-"]));
    assert!(csv.starts_with("epsilon,N\n"));
    assert!(csv.contains("\n0.750000000000,2\n"));
}

#[test]
fn truncation_csv() {
    let ws = Workspace::new();
    let r = ws.file("r.json", r#"{"generator": "rank_one_harmonic", "n": 1}"#);
    let csv = stdout(&dofkit(&[
        "truncate", "--spec", arg(&r), "--m", "1", "--n", "2,4,8", "--csv", "-",
    ]));
    assert_eq!(
        csv,
        "n,epsilon_m_n,provenance\n2,0.500000000000,exact\n4,0.750000000000,exact\n8,0.875000000000,exact\n"
    );

    let h = ws.file("h.json", r#"{"generator": "harmonic_diag", "n": 1}"#);
    let doc = json(&dofkit(&["truncate", "--spec", arg(&h), "--m", "2", "--n", "2,3,4"]));
    for p in doc["points"].as_array().unwrap() {
        assert!((p["epsilon"].as_f64().unwrap() - 0.5).abs() < 1e-15);
    }

    let csv = stdout(&dofkit(&["truncate", "--spec", arg(&r), "--m", "1", "--n", "1", "--csv", "-"]));
    assert_eq!(csv, "n,epsilon_m_n,provenance\n1,,\n");

    let overflow = dofkit(&["truncate", "--spec", arg(&h), "--m", "1", "--n", "2,3", "--m-rows", "2"]);
    assert_eq!(overflow.status.code(), Some(4));
}

#[test]
fn oracle_bracket() {
    let ws = Workspace::new();
    let spec = ws.file(
        "c.json",
        r#"{"m": 2, "n": 2, "matrix": [1, 0, 0, 0.5],
            "domain_norm": {"kind": "linf"}, "codomain_norm": {"kind": "linf"}}"#,
    );
    let doc = json(&dofkit(&["oracle", "--spec", arg(&spec), "--p", "1", "--grid-points", "360"]));
    assert!(doc["bracket"]["upper"].as_f64().unwrap() <= 0.5 + 1e-3);
    let doc = json(&dofkit(&["oracle", "--spec", arg(&spec), "--p", "0"]));
    assert_eq!(doc["bracket"]["lower"].as_f64(), Some(1.0));
}

#[test]
fn exit_codes() {
    let ws = Workspace::new();
    let garbage = ws.file("g.json", "{not json");
    assert_eq!(dofkit(&["profile", "--spec", arg(&garbage)]).status.code(), Some(2));
    let mismatch = ws.file(
        "m.json",
        r#"{"m": 2, "n": 2, "matrix": [1, 2, 3],
            "domain_norm": {"kind": "l1"}, "codomain_norm": {"kind": "l1"}}"#,
    );
    assert_eq!(dofkit(&["profile", "--spec", arg(&mismatch)]).status.code(), Some(4));
    let cube = ws.file(
        "c.json",
        r#"{"m": 1, "n": 3, "matrix": [1, 2, 3],
            "domain_norm": {"kind": "linf"}, "codomain_norm": {"kind": "l1"}}"#,
    );
    assert_eq!(
        dofkit(&["profile", "--spec", arg(&cube), "--cap", "4"]).status.code(),
        Some(3)
    );
}

#[test]
fn outputs_are_byte_stable() {
    let ws = Workspace::new();
    let spec = ws.file(
        "mixed.json",
        r#"{"m": 3, "n": 3, "matrix": [1, 0.2, -0.4, 0.3, 0.8, 0.1, -0.5, 0.1, 0.6],
            "domain_norm": {"kind": "l2"}, "codomain_norm": {"kind": "l1"}}"#,
    );
    let args = ["profile", "--spec", arg(&spec), "--seed", "11"];
    let first = stdout(&dofkit(&args));
    let second = stdout(&dofkit(&args));
    assert_eq!(first, second);
    assert!(first.contains("\"seed\":11"));
    assert!(first.contains("heuristic"));
}
