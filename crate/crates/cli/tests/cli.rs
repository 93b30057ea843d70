use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn coxeter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxeter"))
        .args(args)
        .env_remove("COXETER_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_files(dir: &Path) -> Vec<String> {
    let mut out = Vec::new();
    for entry in walk(dir) {
        if entry.ends_with(".json") {
            out.push(entry);
        }
    }
    out
}

fn walk(dir: &Path) -> Vec<String> {
    let mut out = Vec::new();
    let Ok(rd) = fs::read_dir(dir) else { return out };
    for e in rd.flatten() {
        let p = e.path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p.to_string_lossy().into_owned());
        }
    }
    out
}

#[test]
fn verify_single_case_passes() {
    let o = coxeter(&["--no-cache", "verify", "--p", "2", "--r", "2", "--flavor", "gl"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("GL2 p=2 k=1 r=2 mixed\tgroup_order\tpass"));
    assert!(text.lines().last().unwrap().starts_with("summary: 1 cases"));
    assert!(!text.contains("\tfail\t"));
}

#[test]
fn verify_report_fields() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = coxeter(&[
        "--no-cache",
        "verify",
        "--p",
        "3",
        "--r",
        "1",
        "--mode",
        "equal",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 2);
    for case in cases {
        for check in case["checks"].as_array().unwrap() {
            for field in ["case", "check_id", "clause", "computed", "predicted", "verdict", "runtime_s"] {
                assert!(check.get(field).is_some(), "missing {field} in {check}");
            }
            let verdict = check["verdict"].as_str().unwrap();
            assert!(["pass", "inapplicable"].contains(&verdict), "{check}");
        }
    }
}

#[test]
fn verify_manifest_and_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.toml");
    fs::write(
        &manifest,
        "[[case]]\np = 2\nk = 1\nr = 2\nflavor = \"sl\"\nmode = \"equal\"\n\n[[case]]\np = 3\nk = 1\nr = 1\nflavor = \"gl\"\nmode = \"mixed\"\n",
    )
    .unwrap();
    let cache = dir.path().join("cache");
    let o = coxeter(&["--cache-dir", cache.to_str().unwrap(), "verify", "--manifest", manifest.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("summary: 2 cases"));
    let files = json_files(&cache);
    assert!(files.iter().any(|f| f.ends_with("sl-p2-k1-r2-equal.json")), "{files:?}");

    let again = coxeter(&["--cache-dir", cache.to_str().unwrap(), "verify", "--manifest", manifest.to_str().unwrap()]);
    assert!(again.status.success());
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_coxeter"))
        .args(["table", "--p", "3", "--r", "1", "--flavor", "sl"])
        .env("COXETER_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    let files = json_files(dir.path());
    assert_eq!(files.len(), 1, "{files:?}");
    assert!(files[0].ends_with("sl-p3-k1-r1-mixed.json"));
}

#[test]
fn malformed_manifest_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("bad.toml");
    fs::write(&manifest, "[[case]]\np = 4\nk = 1\nr = 1\nflavor = \"gl\"\nmode = \"mixed\"\n").unwrap();
    let o = coxeter(&["--no-cache", "verify", "--manifest", manifest.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_tsv_and_json() {
    let o = coxeter(&["--no-cache", "table", "--p", "2", "--r", "1", "--flavor", "gl"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "class\trep\tsize\tchi0\tchi1\tchi2");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let o = coxeter(&[
        "--no-cache",
        "table",
        "--p",
        "3",
        "--r",
        "1",
        "--flavor",
        "gl",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["group_order"], 48);
    assert_eq!(v["classes"].as_array().unwrap().len(), 8);
    assert_eq!(v["characters"].as_array().unwrap().len(), 8);
}

#[test]
fn sweep_tsv() {
    let o = coxeter(&["sweep-conjecture", "--groups", "gl2,sl3", "--q", "2,3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("group\ttwist\tq\t"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 2 * (2 + 3));
    assert!(rows.iter().all(|r| r.last() == Some(&"pass")));

    let o = coxeter(&["sweep-conjecture", "--groups", "gl4", "--q", "5", "--coxeter-only", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
}

#[test]
fn classify_and_predict_line_counts() {
    let o = coxeter(&["classify-torus", "--p", "2", "--r", "2"]);
    assert!(o.status.success());
    let recs: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 12);
    assert_eq!(recs.iter().filter(|r| r["regular"] == Value::Bool(true)).count(), 6);

    let o = coxeter(&["--no-cache", "predict", "--p", "3", "--r", "2", "--mode", "equal", "--flavor", "sl"]);
    assert!(o.status.success());
    let recs: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 72);
    for r in &recs {
        assert!(r["clause"].is_string());
        assert!(r["conjecture_sign"].is_i64(), "{r}");
    }
}
