use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tamesym::classifier::MoritaFingerprint;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tamesym")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares with a golden file; `UPDATE_GOLDEN=1` rewrites it instead.
fn check_golden(name: &str, args: &[&str]) {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let got = stdout(&o);
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "{name} differs from the golden file");
}

fn json(args: &[&str]) -> (Value, Option<i32>) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    (serde_json::from_slice(&o.stdout).expect("valid JSON"), o.status.code())
}

#[test]
fn local_dihedral_tables() {
    check_golden("dihedral-1-char0.md", &["table", "--section", "dihedral-1", "--char", "0"]);
    check_golden("dihedral-1-char2.md", &["table", "--section", "dihedral-1", "--char", "2"]);
    check_golden("dihedral-1-char7.csv", &["table", "--section", "dihedral-1", "--char", "7", "--format", "csv"]);
}

#[test]
fn semidihedral_block_table() {
    check_golden(
        "blocks-semidihedral-4-5.md",
        &["table", "--section", "blocks-semidihedral", "--char", "2", "--defect", "4..5"],
    );
}

#[test]
fn invariants_and_comparison_reports() {
    check_golden("q3a1-f4.md", &["invariants", "--family", "Q3A1", "--params", "d=g", "--char", "2", "--field-order", "4"]);
    let o = run(&["compare", "D1A2:k=2,d=0", "D1A2:k=2,d=1", "--char", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let path = golden_path("compare-d1a2.md");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, stdout(&o)).unwrap();
    } else {
        assert_eq!(stdout(&o), std::fs::read_to_string(path).unwrap());
    }
}

#[test]
fn invariants_json_values() {
    let (v, code) = json(&["invariants", "--family", "D1A1", "--params", "k=2", "--char", "2"]);
    assert_eq!(code, Some(0));
    let fp = &v["data"]["fingerprint"];
    assert_eq!(fp["dim_z"], 5);
    assert_eq!(fp["dim_zpr"], 0);
    assert_eq!(fp["stable_grothendieck"]["torsion"], serde_json::json!([8]));
    let (v, _) = json(&["invariants", "--family", "A1", "--params", "m=3,n=2", "--char", "0"]);
    assert_eq!((v["data"]["fingerprint"]["dim_z"].as_u64(), v["data"]["fingerprint"]["dim_zpr"].as_u64()), (Some(5), Some(1)));
    let (v, _) = json(&["invariants", "--family", "Q3A1", "--params", "d=g", "--char", "2", "--field-order", "4"]);
    assert_eq!(v["data"]["fingerprint"]["dim_z"], 6);
}

#[test]
fn json_round_trips() {
    let (v, _) = json(&["invariants", "--family", "SD2B1", "--params", "1,3,1", "--char", "2"]);
    let fp: MoritaFingerprint = serde_json::from_value(v["data"]["fingerprint"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&fp).unwrap(), v["data"]["fingerprint"]);
}

#[test]
fn compare_exit_codes() {
    let cases: [(&[&str], i32, Option<&str>); 5] = [
        (&["compare", "D2B:k=1,s=2,c=0", "D2B:k=1,s=2,c=1", "--char", "2", "--relaxed"], 0, Some("special_biserial")),
        (&["compare", "SD2B1:1,3,0", "SD2B1:1,3,1", "--char", "2"], 0, Some("kuelshammer_1")),
        (&["compare", "D1A2:k=2,d=0", "D1A2:k=2,d=1", "--char", "2"], 3, None),
        (&["compare", "SD2B1:2,3,0", "SD2B1:2,3,1", "--char", "2"], 4, None),
        (&["compare", "A1:4,2", "A1:3,3", "--char", "0"], 0, Some("fp_z_mod_r")),
    ];
    for (args, code, invariant) in cases {
        let (v, got) = json(args);
        assert_eq!(got, Some(code), "{args:?}");
        if let Some(name) = invariant {
            assert_eq!(v["data"]["verdict"]["outcome"], "distinguished");
            assert_eq!(v["data"]["verdict"]["invariant"], name, "{args:?}");
        }
    }
    // equal orders of G, told apart by the Loewy length of Zst among others
    let (v, _) = json(&["compare", "A1:4,2", "A1:3,3", "--char", "0"]);
    assert!(v["data"]["verdict"]["also"].as_array().unwrap().contains(&"loewy_zst".into()));
}

#[test]
fn constraint_violations_exit_two() {
    let o = run(&["compare", "D2B:k=1,s=2,c=0", "D2B:k=1,s=2,c=1", "--char", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("k >= s"));
    let o = run(&["invariants", "--family", "Q3A1", "--params", "d=1", "--char", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["invariants", "--family", "D1A2", "--params", "k=2,d=1", "--char", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["table", "--section", "blocks-dihedral", "--char", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["compare", "SD2B1:1,3,0", "SD2B1:1,3,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn presentation_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("d1a1.txt");
    std::fs::write(
        &good,
        "field char=2\nvertices 1\narrow X 0 0\narrow Y 0 0\nparam k=2\nrelation X^2\nrelation Y^2\nrelation (XY)^k - (YX)^k\n",
    )
    .unwrap();
    let g = good.to_str().unwrap();
    let (v, code) = json(&["parse-check", g, "--build"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["data"]["dimension"], 8);
    // the file is D(1A)_1^2, so every invariant agrees with the catalog entry
    let (from_file, _) = json(&["invariants", "--presentation-file", g]);
    let (from_catalog, _) = json(&["invariants", "--family", "D1A1", "--params", "k=2", "--char", "2"]);
    for key in ["dim_z", "dim_zpr", "cartan", "fp_zst", "kuelshammer_fps"] {
        assert_eq!(from_file["data"]["fingerprint"][key], from_catalog["data"]["fingerprint"][key], "{key}");
    }
    let at = format!("@{g}");
    let (v, code) = json(&["compare", &at, "D1A1:k=3"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["data"]["verdict"]["invariant"], "stable_grothendieck");
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "field char=2\nvertices 1\narrow X 0 0\nrelation X^2 +\n").unwrap();
    let o = run(&["parse-check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--section", "blocks-quaternion", "--defect", "3..4", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn selftest_reports_injected_fault() {
    let o = run(&["selftest", "--quick", "--criterion", "1", "--inject-fault", "wrong-cartan"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("| 1 | local dihedral invariant tables | FAIL |"));
    let o = run(&["selftest", "--quick", "--criterion", "1", "--criterion", "7"]);
    assert_eq!(o.status.code(), Some(0));
}

/// Validates with the Python `jsonschema` package; the test is skipped where
/// it is not installed.
#[test]
fn json_matches_shipped_schema() {
    let schema = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let probe = Command::new("python3").args(["-c", "import jsonschema"]).output();
    if !probe.map(|o| o.status.success()).unwrap_or(false) {
        eprintln!("python3 with jsonschema not available; skipping schema validation");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let pres = dir.path().join("p.txt");
    std::fs::write(&pres, "field char=3\nvertices 1\narrow X 0 0\nrelation X^3\n").unwrap();
    let p = pres.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["invariants", "--family", "SD2B2", "--params", "2,2,1", "--char", "2"],
        vec!["invariants", "--presentation-file", p],
        vec!["table", "--section", "dihedral-1", "--char", "3"],
        vec!["table", "--section", "blocks-dihedral", "--defect", "3"],
        vec!["compare", "Q2B1:2,3,1,0", "Q2B1:2,3,1,1", "--char", "2"],
        vec!["compare", "C1", "C1", "--char", "0"],
        vec!["blocks", "--rep-type", "quaternion", "--defect", "3"],
        vec!["section7", "--rep-type", "semidihedral", "--char", "0", "--bound", "2"],
        vec!["selftest", "--quick", "--criterion", "7"],
        vec!["parse-check", p, "--build"],
    ];
    for args in commands {
        let (v, _) = json(&args);
        let doc = dir.path().join("doc.json");
        std::fs::write(&doc, serde_json::to_vec(&v).unwrap()).unwrap();
        let script = "import json,sys,jsonschema\n\
                      s=json.load(open(sys.argv[1]))\n\
                      jsonschema.Draft202012Validator.check_schema(s)\n\
                      jsonschema.validate(json.load(open(sys.argv[2])), s, cls=jsonschema.Draft202012Validator)";
        let o = Command::new("python3")
            .args(["-c", script, schema.to_str().unwrap(), doc.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}
