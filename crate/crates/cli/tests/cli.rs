use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockweights"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn symbol_identity_passes() {
    let out = run(&["symbol-identity", "--rankmax", "8"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("0 failed"));
}

#[test]
fn even_q_is_a_usage_error() {
    let out = run(&["tables-e6", "--q", "2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd"));
    assert_eq!(code(&run(&["e8", "--q", "7"])), 1);
    assert_eq!(code(&run(&["isometry", "--case", "5"])), 1);
    assert_eq!(code(&run(&["no-such-command"])), 1);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut bodies = Vec::new();
    for sub in ["a", "b"] {
        let path = dir.path().join(sub);
        let out = run(&["tables-e6", "--report-dir", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
        let text = fs::read_to_string(path.join("tables-e6.json")).unwrap();
        let mut json: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(json["header"]["schema"], "blockweights-report/1");
        json.as_object_mut().unwrap().remove("header");
        bodies.push(json);
        assert!(path.join("tables-e6.txt").exists());
    }
    assert_eq!(bodies[0], bodies[1]);
    let totals = &bodies[0]["totals"];
    assert_eq!(totals["fail"], 0);
    assert_eq!(totals["pass"].as_u64().unwrap() as usize, bodies[0]["checks"].as_array().unwrap().len());
}

#[test]
fn audit_marks_the_errata() {
    let out = run(&["tables-e6", "--audit"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let flagged: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("! "))
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(flagged, ["E6.xii", "E6.xvii", "2E6.iii", "2E6.vi", "2E6.xii", "2E6.xvii"]);
}

#[test]
fn catalog_override_changes_the_outcome() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("degrees.jsonl");
    // half the F4[i] degree instead of a quarter: defect drops from 5 to 4
    fs::write(
        &file,
        r#"{"series":"F4","label":"F4[i]","degree":{"scalar":[1,2],"qpow":4,"phis":{"1":4,"2":4,"3":2,"6":2}}}"#,
    )
    .unwrap();
    let out = run(&["named", "--data", file.to_str().unwrap()]);
    assert_eq!(code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l.starts_with("FAIL") && l.contains("F4:F4[i]")));
    assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains("F4:F4[-i]")));

    fs::write(&file, "not json").unwrap();
    assert_eq!(code(&run(&["named", "--data", file.to_str().unwrap()])), 1);
}

#[test]
fn single_suites() {
    for args in [
        &["local-groups"][..],
        &["landrock"],
        &["norm8"],
        &["isometry", "--case", "21", "--partial", "rotate"],
        &["isometry", "--case", "7", "--partial", "negation"],
        &["sylow", "--q", "3,5,7"],
        &["zsigmondy", "--q", "3", "--nmax", "12"],
        &["f4"],
        &["e8"],
        &["classical-defects", "--lmax", "4", "--qset", "3,5"],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn json_output() {
    let out = run(&["norm8", "--json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["suite"], "norm8");
    assert_eq!(json["checks"][0]["status"], "pass");
}

#[test]
fn quick_suite_passes() {
    let out = run(&["all", "--quick"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn f4_residual_claim_is_conditional_without_data() {
    let out = run(&["f4", "--q", "3"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("NOTE  conditional"));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("f4.jsonl");
    fs::write(&file, r#"{"series":"F4","label":"St","degree":{"scalar":[1,1],"qpow":24,"phis":{}}}"#).unwrap();
    let out = run(&["f4", "--q", "3,5", "--data", file.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS  f4.q5.St"));
    assert!(!text.contains("NOTE  conditional"));
}
