use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn qlie(cache: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_qlie"))
        .args(args)
        .env("QLIE_CACHE", cache)
        .env_remove("RUST_LOG")
        .output()
        .expect("qlie runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn schema(verb: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../docs/schema/{verb}.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn type_matches(ty: &str, v: &Value) -> bool {
    match ty {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "integer" => v.is_i64() || v.is_u64(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        _ => false,
    }
}

/// The subset of JSON Schema the shipped schemas use.
fn conforms(s: &Value, v: &Value, at: &str) -> Result<(), String> {
    if let Some(ty) = s.get("type") {
        let ok = match ty {
            Value::String(t) => type_matches(t, v),
            Value::Array(ts) => ts.iter().any(|t| type_matches(t.as_str().unwrap(), v)),
            _ => true,
        };
        if !ok {
            return Err(format!("{at}: expected {ty}, got {v}"));
        }
    }
    if let Some(options) = s.get("enum").and_then(Value::as_array) {
        if !options.contains(v) {
            return Err(format!("{at}: {v} not in {options:?}"));
        }
    }
    if let Value::Object(map) = v {
        for req in s.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !map.contains_key(req.as_str().unwrap()) {
                return Err(format!("{at}: missing {req}"));
            }
        }
        let props = s.get("properties").and_then(Value::as_object);
        for (k, x) in map {
            match props.and_then(|p| p.get(k)) {
                Some(sub) => conforms(sub, x, &format!("{at}.{k}"))?,
                None => match s.get("additionalProperties") {
                    Some(extra) => conforms(extra, x, &format!("{at}.{k}"))?,
                    None => return Err(format!("{at}: undocumented key {k}")),
                },
            }
        }
    }
    if let (Value::Array(items), Some(sub)) = (v, s.get("items")) {
        for (i, x) in items.iter().enumerate() {
            conforms(sub, x, &format!("{at}[{i}]"))?;
        }
    }
    Ok(())
}

fn json_ok(cache: &Path, verb: &str, args: &[&str]) -> Value {
    let r = qlie(cache, args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    let v: Value = serde_json::from_str(r.stdout.trim()).unwrap();
    conforms(&schema(verb), &v, verb).unwrap();
    v
}

#[test]
fn d5_partition_count() {
    let dir = tempfile::tempdir().unwrap();
    let v = json_ok(dir.path(), "partitions", &["partitions", "--type", "D5", "--root", "highest", "--count"]);
    assert_eq!(v["count"], 55);
    let r = qlie(dir.path(), &["partitions", "--type", "D5", "--root", "highest", "--count", "--pretty"]);
    assert_eq!(r.stdout.trim(), "55");
}

#[test]
fn every_verb_matches_its_schema() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    json_ok(d, "roots", &["roots", "--type", "E6"]);
    json_ok(d, "roots", &["roots", "--type", "A~2", "--max-height", "5"]);
    json_ok(d, "partitions", &["partitions", "--type", "A3", "--root", "1,1,1"]);
    json_ok(d, "epsilon", &["epsilon", "--type", "D4", "--alpha", "1,1,0,0", "--beta", "-1,0,1,0"]);
    json_ok(d, "bracket", &["bracket", "--type", "A2", "--alpha", "1,0", "--beta", "0,1"]);
    json_ok(d, "bracket", &["bracket", "--type", "A~1", "--alpha", "1,0", "--beta", "0,1", "--cutoff", "2"]);
    let h = json_ok(d, "hall", &["hall", "--type", "A2", "--alpha", "1,0", "--beta", "0,1"]);
    assert_eq!(h["passed"], true);
    let h = json_ok(d, "hall", &["hall", "--type", "A3", "--m", "1,1,1", "--n", "1,0,0", "--p", "0,1,1", "--q", "4"]);
    assert_eq!(h["coeffs"], serde_json::json!([1]));
    let s = json_ok(d, "stability", &["stability", "--type", "A2", "--root", "1,1"]);
    assert_eq!(s["lines"], serde_json::json!(["0,1;1,0;-1,1;unstable;1,0", "1,1;-1,1;stable;-"]));
    json_ok(d, "coeffs", &["coeffs", "--type", "D4", "--root", "highest", "--normalize", "none"]);
    json_ok(d, "validate", &["validate", "--tables", "d4,d5", "--cache"]);
    json_ok(d, "bps-audit", &["bps-audit", "--type", "D~4", "--cutoff", "1"]);
    json_ok(d, "selfcheck", &["selfcheck", "--only", "1,10"]);
}

#[test]
fn coeffs_a3_table() {
    let dir = tempfile::tempdir().unwrap();
    let v = json_ok(dir.path(), "coeffs", &["coeffs", "--type", "A3", "--root", "1,1,1"]);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    assert!(entries.iter().all(|e| e["value"].as_i64().unwrap().abs() == 1));
    assert_eq!(v["complete"], true);
    assert_eq!(v["global_sign_disclaimer"], true);
}

#[test]
fn output_is_byte_stable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["coeffs", "--type", "D5", "--root", "highest"];
    let first = qlie(a.path(), &args).stdout;
    assert_eq!(first, qlie(a.path(), &args).stdout);
    assert_eq!(first, qlie(b.path(), &args).stdout);
    let hall = ["hall", "--type", "D4", "--alpha", "1,0,0,0", "--beta", "1,1,1,1"];
    let cold = qlie(a.path(), &hall).stdout;
    assert_eq!(cold, qlie(a.path(), &hall).stdout, "warm cache changes output");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(qlie(d, &["roots", "--type", "Q7"]).code, 2);
    assert_eq!(qlie(d, &["roots", "--type", "A2", "--frobnicate"]).code, 2);
    assert_eq!(qlie(d, &["partitions", "--type", "A2", "--root", "1,0,1"]).code, 2);
    assert_eq!(qlie(d, &["validate"]).code, 2);
    assert_eq!(qlie(d, &["bps-audit", "--type", "A~1", "--cutoff", "9"]).code, 2);
    assert_eq!(qlie(d, &["hall", "--type", "A4", "--m", "3,3,3,3", "--n", "1,1,1,1", "--p", "2,2,2,2"]).code, 2);
    let nine = ["1,0,0,0"; 9].join(";");
    let four = ["1,0,0,0"; 4].join(";");
    let five = ["1,0,0,0"; 5].join(";");
    let big = qlie(d, &["hall", "--type", "A4", "--m", &nine, "--n", &four, "--p", &five]);
    assert_eq!(big.code, 3, "{}", big.stderr);
}

#[test]
fn corrupted_cache_is_detected_and_repaired() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = ["hall", "--type", "A3", "--alpha", "1,0,0", "--beta", "0,1,1"];
    let clean = qlie(d, &args).stdout;
    let file = d.join("hall.cache");
    let text = std::fs::read_to_string(&file).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    lines[1] = lines[1].replacen(";0;", ";5;", 1);
    std::fs::write(&file, lines.join("\n") + "\n").unwrap();

    let v = qlie(d, &["validate", "--cache"]);
    assert_eq!(v.code, 1);
    let report: Value = serde_json::from_str(v.stdout.trim()).unwrap();
    assert_eq!(report["cache"]["corrupt"].as_array().unwrap().len(), 1);

    let again = qlie(d, &args);
    assert_eq!(again.stdout, clean);
    assert!(again.stderr.contains("dropping cache record"), "{}", again.stderr);
    assert_eq!(qlie(d, &["validate", "--cache"]).code, 0);
}

#[test]
fn mutated_table_file_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let src = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/d4_thetamax.tbl");
    let text = std::fs::read_to_string(src).unwrap().replacen("= 2 #", "= -2 #", 1);
    let path = dir.path().join("d4.tbl");
    std::fs::write(&path, text).unwrap();
    let r = qlie(dir.path(), &["validate", "--table-file", path.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("\"digest\""));
}
