use std::path::PathBuf;
use std::process::{Command, Output};

use defring_cli::ingest::{parse, validate};
use defring_cli::report::report;
use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_defring");

fn spec(p: u32, gens: &str, options: &str) -> String {
    format!(
        r#"{{"field": {{"p": {p}}}, "local_field": {{"p": {p}, "e": 1, "f": 1, "mu_order": {mu}}},
            "generators": {gens}{options}}}"#,
        mu = if p == 2 { 2 } else { 1 }
    )
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("DEFRING_CAP").output().unwrap()
}

fn report_json(text: &str) -> Value {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "in.json", text);
    let out = run(&["report", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn validation_fields(text: &str) -> Vec<String> {
    let err = validate(parse(text).unwrap()).unwrap_err();
    assert_eq!(err.exit_code(), 1);
    err.fields().into_iter().map(String::from).collect()
}

#[test]
fn trivial_representation_over_q5() {
    let r = report_json(&spec(5, r#"[{"matrix": [[1, 0], [0, 1]], "omega": 2}]"#, ""));
    let c = &r["cohomology"]["value"];
    assert_eq!((c["r"].as_u64(), c["s"].as_u64()), (Some(8), Some(0)));
    assert_eq!(r["expected_dims"]["value"]["r_box"], 9);
    assert_eq!(r["components"]["value"]["component_count_generic"], 1);
    assert_eq!(r["cohomology"]["provenance"], "cohom::profile");
}

#[test]
fn one_plus_omega_over_q5() {
    let r = report_json(&spec(5, r#"[{"matrix": [[1, 0], [0, 2]], "omega": 2}]"#, ""));
    let c = &r["cohomology"]["value"];
    assert_eq!((c["r"].as_u64(), c["s"].as_u64()), (Some(9), Some(1)));
    assert_eq!(r["smoothness"]["value"]["pnot2"], false);
    assert_eq!(r["twist_classes"]["value"], serde_json::json!([[0, 1]]));
    assert!(r["codim_gap"]["value"].as_i64().unwrap() >= 1);
    for row in r["partition_table"]["value"].as_array().unwrap() {
        if row["minimal"] == false {
            assert!(row["codim_gap"].as_i64().unwrap() >= 1);
        }
    }
}

#[test]
fn s3_over_q7_with_kummer_subgroups() {
    let gens = r#"[{"matrix": [[0, -1], [1, -1]], "omega": 3}, {"matrix": [[0, 1], [1, 0]], "omega": 1}]"#;
    let plain = report_json(&spec(7, gens, ""));
    assert_eq!(plain["absolutely_irreducible"]["value"], true);
    assert!(plain["cohomology"]["value"]["h2_ad0"].is_u64());
    assert!(plain.get("kummer").is_none());
    let with = report_json(&spec(7, gens, r#", "options": {"kummer_subgroups": [[[0]], [[0], [1]]]}"#));
    let k = &with["kummer"]["value"];
    assert_eq!(k["restrictions"], serde_json::json!([false, true]));
    assert_eq!(k["kummer_irreducible"], false);
}

#[test]
fn every_section_names_its_operation() {
    let r = report_json(&spec(3, r#"[{"matrix": [[0, 1], [2, 0]], "omega": 2}]"#, ""));
    for (key, value) in r.as_object().unwrap() {
        if value.is_object() && key != "input" {
            let prov = value["provenance"].as_str().unwrap_or_else(|| panic!("{key} has no provenance"));
            assert!(prov.contains("::"), "{key}: {prov}");
        }
    }
}

#[test]
fn report_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.json", &spec(7, r#"[{"matrix": [[1, 1], [0, 3]], "omega": 3}]"#, ""));
    let out = dir.path().join("out.json");
    let a = run(&["report", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(a.status.success());
    let first = std::fs::read(&out).unwrap();
    let b = run(&["report", input.to_str().unwrap()]);
    assert_eq!(first, b.stdout);
}

#[test]
fn validation_names_fields() {
    assert_eq!(
        validation_fields(&spec(5, r#"[{"matrix": [[1, 0], [0, 1]], "omega": 0}]"#, "")),
        ["generators[0].omega"]
    );
    assert_eq!(
        validation_fields(&spec(5, r#"[{"matrix": [[1, 0], [0, 1]], "omega": 1}, {"matrix": [[1, 2], [2, 4]], "omega": 1}]"#, "")),
        ["generators[1].matrix"]
    );
    let mismatch = r#"{"field": {"p": 5}, "local_field": {"p": 7, "e": 1, "f": 1, "mu_order": 1},
        "generators": [{"matrix": [[1]], "omega": 1}]}"#;
    assert_eq!(validation_fields(mismatch), ["local_field.p"]);
}

#[test]
fn trivial_spec_ingests() {
    let v = validate(parse(&spec(5, r#"[{"matrix": [[1]], "omega": 2}]"#, "")).unwrap()).unwrap();
    assert_eq!(v.rep.dim(), 1);
    let r = report(&v).unwrap();
    assert_eq!(r.image_order.value, 4);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad_json = write(&dir, "bad.json", "{ not json");
    assert_eq!(run(&["report", bad_json.to_str().unwrap()]).status.code(), Some(1));
    let singular = write(&dir, "s.json", &spec(5, r#"[{"matrix": [[0, 0], [0, 1]], "omega": 2}]"#, ""));
    let out = run(&["report", singular.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("generators[0].matrix"));
    assert_eq!(run(&["report", "/nonexistent/in.json"]).status.code(), Some(1));
    assert_eq!(run(&["bounds", "--d", "0", "--degree", "1"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-verb"]).status.code(), Some(1));
}

#[test]
fn cap_from_environment() {
    let dir = TempDir::new().unwrap();
    // SL(2, 3) has order 24
    let input = write(
        &dir,
        "in.json",
        &spec(3, r#"[{"matrix": [[1, 1], [0, 1]], "omega": 1}, {"matrix": [[1, 0], [1, 1]], "omega": 1}]"#, ""),
    );
    let out = Command::new(BIN)
        .args(["report", input.to_str().unwrap()])
        .env("DEFRING_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("options.cap"));
}

#[test]
fn warnings_for_p_dividing_d_and_p_two() {
    let r = report_json(&spec(2, r#"[{"matrix": [[1, 1], [0, 1]], "omega": 1}]"#, ""));
    let w: Vec<&str> = r["warnings"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(w.iter().any(|s| s.contains("divides d")));
    assert!(w.iter().any(|s| s.starts_with("p = 2")));
    let mu = r#"{"field": {"p": 3}, "local_field": {"p": 3, "e": 2, "f": 1, "mu_order": 3},
        "generators": [{"matrix": [[1]], "omega": 2}]}"#;
    let r = report_json(mu);
    assert!(r["warnings"].as_array().unwrap().iter().any(|x| x.as_str().unwrap().contains("mu_order = 3")));
}

#[test]
fn bounds_verb() {
    let out = run(&["bounds", "--d", "2", "--degree", "1"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["expected_dims"]["r_box_mod_p"], 8);
    assert_eq!(v["min_codim_gap"], 1);
    let csv = run(&["bounds", "--d", "3", "--degree", "2", "--sweep"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("d,n,blocks"));
    // [3], [2, 1], and [1, 1, 1] with three groupings into twist classes
    assert_eq!(text.lines().count(), 1 + 5);
}

#[test]
fn example35_verb() {
    let out = run(&["example35"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["generators"][0], "x11 + x22 - t - 2");
}

#[test]
fn fibre_count_verb() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "t.json", r#"{"generators": [[[0, 1], [2, 0]], [[1, 1], [1, 2]]]}"#);
    let csv = dir.path().join("points.csv");
    let out = run(&["fibre-count", "--q", "3", "--d", "2", "--spec", spec.to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 24);
    assert_eq!(v["tangent_dims"], serde_json::json!({"3": 24}));
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 25);
    let bad_q = run(&["fibre-count", "--q", "6", "--d", "2", "--spec", spec.to_str().unwrap()]);
    assert_eq!(bad_q.status.code(), Some(1));
    let wrong_d = run(&["fibre-count", "--q", "3", "--d", "3", "--spec", spec.to_str().unwrap()]);
    assert_eq!(wrong_d.status.code(), Some(1));
}

#[test]
fn selftest_verb() {
    let out = run(&["selftest"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 5);
}
