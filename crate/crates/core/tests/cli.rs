use std::io::Write;
use std::process::Command;

use orbifold_cohomology::cli::{run, EXIT_CAP, EXIT_INVARIANT, EXIT_OK, EXIT_OTHER, EXIT_PARSE, EXIT_UNKNOWN_PRESET};
use serde_json::Value;

fn json(args: &[&str]) -> Value {
    let out = run(std::iter::once("orbicoh").chain(args.iter().copied()));
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn table<'a>(report: &'a Value, name: &str) -> &'a Vec<Value> {
    report["tables"].as_array().unwrap().iter().find(|t| t["name"] == name).unwrap()["rows"].as_array().unwrap()
}

fn spec_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn sectors_z2() {
    let r = json(&["sectors", "--preset", "z2-c1"]);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["verdict"], Value::Null);
    let rows = table(&r, "elements");
    assert_eq!(rows.len(), 2);
    assert_eq!((&rows[0][0], &rows[0][4], &rows[0][5]), (&Value::from("e"), &Value::from(0), &Value::from("0")));
    assert_eq!((&rows[1][4], &rows[1][5]), (&Value::from(2), &Value::from("1/2")));
}

#[test]
fn gr_check_reflections_pass() {
    assert_eq!(json(&["gr-check", "--preset", "z2xz2-c2"])["verdict"], "PASS");
}

#[test]
fn ring_cr_z3() {
    let r = json(&["ring", "cr", "--preset", "z3-c1"]);
    assert_eq!(r["verdict"], "PASS");
    let rows = table(&r, "products");
    assert_eq!(rows.len(), 9);
    // ι(γ) = 1/3, ι(γ²) = 2/3: e_γ ⋆ e_γ = t^{1/3+1/3-2/3} e_{γ²}
    let gg = rows.iter().find(|r| r[0] == "g1" && r[1] == "g1").unwrap();
    assert_eq!(gg[2], "0");
    let inverse = rows.iter().find(|r| r[0] == "g1" && r[1] == "g2").unwrap();
    assert_eq!(inverse[2], "1");
}

#[test]
fn json_is_deterministic() {
    for args in [&["ring", "classical", "--preset", "q8-c2"][..], &["lemma-codim", "--preset", "s3-perm", "--format", "json"]] {
        let a = run(std::iter::once("orbicoh").chain(args.iter().copied()));
        let b = run(std::iter::once("orbicoh").chain(args.iter().copied()));
        assert_eq!(a, b);
    }
}

#[test]
fn markdown_tables() {
    let out = run(["orbicoh", "lemma-codim", "--preset", "z2-c2", "--format", "markdown"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("| left | right | product | ell_additive | transverse | agree |"));
    assert!(out.stdout.ends_with("Verdict: PASS\n"));
}

#[test]
fn every_check_passes_on_small_presets() {
    for p in ["z2-c1", "z3-c1", "z4-c1", "z2-c2", "z2xz2-c2", "q8-c2"] {
        for cmd in [&["ring", "classical"][..], &["ring", "deformed"], &["ring", "ht"], &["gr-check"], &["j-check"]] {
            let mut args = vec!["orbicoh"];
            args.extend_from_slice(cmd);
            args.extend_from_slice(&["--preset", p]);
            let out = run(args);
            assert_eq!(out.code, EXIT_OK, "{p} {cmd:?}: {}", out.stderr);
        }
    }
}

#[test]
fn weyl_report() {
    let r = json(&["weyl", "--preset", "z4-c1", "--gamma", "1", "--weight-max", "4"]);
    let betti = table(&r, "betti");
    assert_eq!(betti.len(), 4);
    for (w, row) in betti.iter().enumerate() {
        assert_eq!(row.as_array().unwrap()[1..], [Value::from(0), Value::from(0), Value::from(u64::from(w % 2 == 0))]);
    }
    assert_eq!(r["verdict"], "PASS");
}

#[test]
fn weyl_on_transpositions_reports_failure() {
    let sectors = json(&["sectors", "--preset", "s3-perm"]);
    let t = table(&sectors, "elements").iter().position(|r| r[4] == 2).unwrap();
    let out = run(["orbicoh", "weyl", "--preset", "s3-perm", "--gamma", &t.to_string(), "--weight-max", "1"]);
    assert_eq!(out.code, EXIT_INVARIANT);
    let r: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(r["verdict"], "FAIL");
}

#[test]
fn group_file_round_trip() {
    let f = spec_file(r#"{"name": "mu3", "cyclotomic_order": 3, "dimension": 1, "generators": [[["z^1"]]]}"#);
    let via_file = json(&["sectors", "--group", f.path().to_str().unwrap()]);
    let via_preset = json(&["sectors", "--preset", "z3-c1"]);
    assert_eq!(via_file["tables"], via_preset["tables"]);
    assert_eq!(via_file["group"]["name"], "mu3");
}

#[test]
fn exit_codes() {
    let bad_syntax = spec_file("{\"cyclotomic_order\": 2,\n \"dimension\": 1,\n \"generators\": [[[\"1/0\"]]]}");
    let out = run(["orbicoh", "sectors", "--group", bad_syntax.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_PARSE);
    assert!(out.stderr.contains("line 3 column"), "{}", out.stderr);

    let bad_shape = spec_file(r#"{"cyclotomic_order": 2, "dimension": 2, "generators": [[["1"]]]}"#);
    let out = run(["orbicoh", "sectors", "--group", bad_shape.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_PARSE);
    assert!(out.stderr.contains("generators[0]"), "{}", out.stderr);

    let infinite = spec_file(r#"{"cyclotomic_order": 1, "dimension": 1, "generators": [[["2"]]]}"#);
    assert_eq!(run(["orbicoh", "sectors", "--group", infinite.path().to_str().unwrap(), "--cap", "20"]).code, EXIT_CAP);

    assert_eq!(run(["orbicoh", "sectors", "--preset", "z7-c9"]).code, EXIT_UNKNOWN_PRESET);
    assert_eq!(run(["orbicoh", "sectors"]).code, EXIT_OTHER);
    assert_eq!(run(["orbicoh", "weyl", "--preset", "z2-c1", "--gamma", "9"]).code, EXIT_OTHER);
}

#[test]
fn binary_matches_library() {
    let bin = env!("CARGO_BIN_EXE_orbicoh");
    let out = Command::new(bin).args(["sectors", "--preset", "z4-c1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), run(["orbicoh", "sectors", "--preset", "z4-c1"]).stdout);
    let out = Command::new(bin).args(["sectors", "--preset", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_UNKNOWN_PRESET));
    assert!(String::from_utf8(out.stderr).unwrap().contains("unknown preset"));
}
