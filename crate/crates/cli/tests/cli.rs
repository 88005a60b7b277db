use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn ncx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncx")).args(args).env("NCX_THREADS", "2").output().expect("run ncx")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

/// Jordan blocks of sizes 3 and 1 with N = 3.
fn module_json() -> Value {
    json!({"N": 3, "field": "Q", "d": {"rows": 4, "cols": 4, "entries": [[0, 1, "1"], [1, 2, "1"]]}})
}

#[test]
fn poincare_example_exits_zero() {
    let o = ncx(&["poincare", "--N", "3", "--D", "3", "--k", "2", "--wmax", "6"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("holds: yes"));
}

#[test]
fn homology_table() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "m.json", &module_json());
    let o = ncx(&["homology", &f, "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], 1);
    // the size-1 block contributes to both H_(1) and H_(2); the size-3 block to neither
    let dims: Vec<u64> = v["result"]["pieces"].as_array().unwrap().iter().map(|p| p["dim_h"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 1]);
    let o = ncx(&["multiplicities", &f]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("[1, 0, 1]"));
}

#[test]
fn json_reports_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "m.json", &module_json());
    for args in [
        vec!["homology", f.as_str()],
        vec!["hexagon", f.as_str()],
        vec!["spin-example", "--spin", "2"],
        vec!["gauge-ext", "--random-N", "3", "--seed", "9"],
        vec!["brs", "--example", "abelian", "--wmax", "3"],
        vec!["selftest", "--only", "13"],
    ] {
        let mut a = args.clone();
        a.extend(["--format", "json"]);
        let o = ncx(&a);
        assert_eq!(code(&o), 0, "{args:?}");
        let text = stdout(&o);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text, "{args:?}");
    }
}

#[test]
fn csv_output() {
    let o = ncx(&["spin-seq", "--S", "1", "--D", "3", "--wmax", "2", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "weight,dims,rank in,rank mid,rank out,exact at S,exact at 2S");
    assert_eq!(lines.count(), 3);
}

#[test]
fn seeded_runs_repeat() {
    let a = ncx(&["gauge-ext", "--random-N", "4", "--seed", "11", "--format", "json"]);
    let b = ncx(&["gauge-ext", "--random-N", "4", "--seed", "11", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let c = ncx(&["potential", "--seed", "3", "--format", "json"]);
    let d = ncx(&["potential", "--seed", "3", "--format", "json"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&ncx(&[])), 2);
    assert_eq!(code(&ncx(&["frobnicate"])), 2);
    assert_eq!(code(&ncx(&["poincare", "--N", "3"])), 2);
    assert_eq!(code(&ncx(&["homology", "/definitely/not/here.json"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"N\": 3,\n  \"d\": [1, 2").unwrap();
    let o = ncx(&["homology", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    // d³ ≠ 0 is an input problem, not a failed check
    let f = write(dir.path(), "long.json", &json!({"N": 2, "d": {"rows": 3, "cols": 3, "entries": [[0, 1, "1"], [1, 2, "1"]]}}));
    assert_eq!(code(&ncx(&["homology", &f])), 2);
    assert_eq!(code(&ncx(&["theorem2", "--q", "1"])), 2);
    assert_eq!(code(&ncx(&["selftest", "--only", "99"])), 2);
    assert_eq!(code(&ncx(&["spin-example", "--p", "1,1,1,0"])), 2);
}

#[test]
fn failed_check_exits_one_and_leaves_a_replayable_witness() {
    let dir = tempfile::tempdir().unwrap();
    // asserted regular, but u = (x, x) is not a regular sequence
    let sys = json!({"vars": 2, "constraints": [{"1,0": "1"}, {"1,0": "1"}], "vector_fields": [], "regular": true});
    let f = write(dir.path(), "sys.json", &sys);
    let art = dir.path().join("artifacts");
    let o = ncx(&["brs", &f, "--wmax", "2", "--artifact-dir", art.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let witness = art.join("ncx-failure-brs.json");
    assert!(witness.exists());
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&witness).unwrap()).unwrap();
    assert_eq!(saved["schema_version"], 1);
    assert_eq!(saved["witness"]["vars"], 2);
    let replay = ncx(&["brs", witness.to_str().unwrap(), "--wmax", "2", "--artifact-dir", dir.path().join("again").to_str().unwrap()]);
    assert_eq!(code(&replay), 1);
}

#[test]
fn selftest_subset() {
    let o = Command::new(env!("CARGO_BIN_EXE_ncx")).args(["selftest", "--seed", "42", "--only", "6,13,14"]).env("NCX_THREADS", "1").output().unwrap();
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("1 worker thread"));
    assert_eq!(text.matches("PASS").count(), 3);
}

#[test]
fn documented_invocations() {
    let o = ncx(&["gauge-ext", "verify", "--suite", "random", "--trials", "12", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["trials"], 12);
    assert_eq!(code(&ncx(&["brs", "--example", "abelian", "--deg-max", "3"])), 0);
    assert_eq!(code(&ncx(&["gauge-ext", "verify", "--suite", "random", "--hochschild", "z2"])), 2);
}
