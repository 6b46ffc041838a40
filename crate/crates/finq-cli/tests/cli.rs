use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn finq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finq"))
        .args(args)
        .env_remove("FINQ_FIXTURE_DIR")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = finq(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn result(args: &[&str]) -> Value {
    report(args)["result"].clone()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn born_example_is_zero() {
    let r = report(&["born", "--group", "S3", "--component", "2", "--m", "1,1,2", "--n", "1,3,2"]);
    assert_eq!(r["command"], "born");
    assert_eq!(r["seed"], 1);
    assert_eq!(r["result"]["probability"], "0/1");
    assert_eq!(r["result"]["probability_float"], 0.0);
}

#[test]
fn irrational_component_needs_combining() {
    let base = [
        "born", "--group", "A5ico", "--m", "3,1,4,1,5,9,2,6,5,3,5,8", "--n",
        "2,7,1,8,2,8,1,8,2,8,4,5",
    ];
    let forms = result(&["forms", "--group", "A5ico"]);
    let k = forms["forms"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["dimension"] == 3)
        .unwrap()["component"]
        .to_string();
    let mut args = base.to_vec();
    args.extend(["--component", &k]);
    let out = finq(&args);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "IrrationalProbability");
    args.push("--combine-conjugates");
    let p = result(&args)["probability"].as_str().unwrap().to_string();
    assert!(p.contains('/'));
}

#[test]
fn classify_counts() {
    let r = result(&["relations", "classify"]);
    assert_eq!(r["reducible"], 118);
    assert_eq!(r["irreducible"], 138);
    assert_eq!(r["prime"], serde_json::json!([105, 150]));
}

#[test]
fn rule_30_faces() {
    let r = result(&["relations", "decompose", "--rule", "30"]);
    let faces: Vec<String> = r["consequences"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| format!("{}:{}", strings(&c["face"]).concat(), c["bits"].as_str().unwrap()))
        .collect();
    assert_eq!(faces, ["prs:11011110", "pqs:11011110"]);
    assert_eq!(r["factor"]["file"]["bits"], "1011111101111111");
    assert_eq!(r["reducible"], false);
}

#[test]
fn life_decomposition_rebuilds() {
    let r = result(&["relations", "life"]);
    assert_eq!(r["size"], 512);
    assert_eq!(r["base_equals_relation"], true);
    assert_eq!(r["r1"].as_array().unwrap().len(), 8);
}

#[test]
fn fixtures_list_and_show() {
    let list = result(&["fixtures", "list"]);
    assert!(!list["groups"].as_array().unwrap().is_empty());

    let s3 = result(&["fixtures", "show", "S3"]);
    let rows: Vec<Vec<String>> = s3["character_table"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(strings)
        .collect();
    assert_eq!(rows, [["1", "1", "1"], ["1", "-1", "1"], ["2", "0", "-1"]]);
    assert_eq!(s3["group"]["order"], 6);

    let a5 = result(&["fixtures", "show", "A5"]);
    assert_eq!(a5["character_table"]["classes"].as_array().unwrap().len(), 5);
    assert_eq!(strings(&a5["character_table"]["dimensions"]), ["1", "3", "3", "4", "5"]);

    let tb = result(&["fixtures", "show", "tribimaximal"]);
    assert_eq!(tb["matrices"]["squares"][0][0], "2/3");
}

#[test]
fn sl23_forms_report() {
    let r = result(&["forms", "--group", "SL23deg8"]);
    let mut dims: Vec<u64> = r["dimensions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_u64().unwrap())
        .collect();
    dims.sort();
    assert_eq!(dims, [1, 2, 2, 3]);
    assert_eq!(r["rank"], 4);
    assert_eq!(r["structure"]["commutative"], true);
}

#[test]
fn usage_and_computation_errors() {
    assert_eq!(finq(&["orbitals"]).status.code(), Some(2));
    assert_eq!(finq(&["nonsense"]).status.code(), Some(2));
    assert_eq!(finq(&["spacetime", "--T", "12", "--X", "0"]).status.code(), Some(2));

    let out = finq(&["orbitals", "--group", "Q8"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "UnknownFixture");

    let out = finq(&["spacetime", "--exact", "--T", "12", "--X", "13"]);
    assert_eq!(out.status.code(), Some(1));
    let out = finq(&["--format", "csv", "forms", "--group", "S3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["forms", "--group", "A2roots", "--seed", "7"][..],
        &["pathsum", "--M", "4", "--T", "12", "--sources", "-2:0,2:1"][..],
        &["portrait", "--graph", "cube", "--rule", "B123/S0"][..],
    ] {
        let a = finq(args);
        let b = finq(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let timed = report(&["--timing", "fixtures", "list"]);
    assert!(timed["timing_ms"].is_number());
    assert!(report(&["fixtures", "list"]).get("timing_ms").is_none());
}

#[test]
fn exported_group_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("a2.json");
    let out = finq(&["fixtures", "export", "A2roots", "--out", path_str(&file)]);
    assert!(out.status.success());
    let from_file = result(&["orbitals", "--group", path_str(&file)]);
    let builtin = result(&["orbitals", "--group", "A2roots"]);
    assert_eq!(from_file, builtin);
}

#[test]
fn fixture_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("C4.json"),
        r#"{"degree": 4, "generators": ["(1,2,3,4)"], "name": "C4"}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_finq"))
        .args(["orbitals", "--group", "C4"])
        .env("FINQ_FIXTURE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["result"]["rank"], 4);
}

#[test]
fn form_coefficients_feed_born() {
    let forms = result(&["forms", "--group", "S3"]);
    let two = forms["forms"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["dimension"] == 2)
        .unwrap()
        .clone();
    let coeffs = strings(&two["orbital_coeffs"]).join(";");
    let r = result(&["born", "--group", "S3", "--coeffs", &coeffs, "--m", "1,1,2", "--n", "1,3,2"]);
    assert_eq!(r["probability"], "0/1");
}

#[test]
fn exported_graph_and_relation_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("cube.json");
    let out = finq(&["fixtures", "export", "cube", "--kind", "graph", "--out", path_str(&graph)]);
    assert!(out.status.success());
    let a = result(&["portrait", "--graph", path_str(&graph), "--group", "cubeAut", "--rule", "86"]);
    let b = result(&["portrait", "--graph", "cube", "--rule", "86"]);
    assert_eq!(a, b);
    assert_eq!(a["orbit_count"], 22);
    assert_eq!(a["total_weight"], "1/1");

    let rel = dir.path().join("r110.json");
    let d = result(&["relations", "decompose", "--rule", "110"]);
    std::fs::write(&rel, d["relation"]["file"].to_string()).unwrap();
    let again = result(&["relations", "decompose", "--file", path_str(&rel)]);
    assert_eq!(again, d);
}

#[test]
fn pathsum_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("p.svg");
    let out = finq(&[
        "--format", "csv", "pathsum", "--M", "4", "--T", "20", "--sources", "-4:0,4:2", "--svg",
        path_str(&svg),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,exact,float"));
    assert_eq!(lines.count(), 49);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let r = result(&["pathsum", "--M", "1", "--T", "5"]);
    assert_eq!(r["total_intensity"], "8953/1");
}

#[test]
fn spacetime_exact_and_approx() {
    let r = result(&["spacetime", "--exact", "--approx", "--T", "12", "--X", "0"]);
    assert_eq!(r["exact"]["maximum"]["value"], "6/11");
    assert_eq!(r["exact"]["maximum"]["points"], serde_json::json!([[0, 2], [0, 10]]));
    assert_eq!(r["approx"]["unique"], true);
}
