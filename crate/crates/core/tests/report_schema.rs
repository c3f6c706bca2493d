//! Reports written by `check` against the shipped JSON schema.

use majdes::check::{run_suite, CheckReport, Counterexample, Suite, SuiteOptions, Verdict};
use majdes::params;
use serde_json::Value;

const SCHEMA: &str = include_str!("../schemas/check_report.schema.json");

/// Validator for the keywords the report schema uses.
fn validate(root: &Value, schema: &Value, v: &Value, path: &str) -> Result<(), String> {
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let name = r.strip_prefix("#/$defs/").ok_or_else(|| format!("unsupported $ref {r}"))?;
        return validate(root, &root["$defs"][name], v, path);
    }
    if let Some(options) = schema.get("anyOf").and_then(Value::as_array) {
        if !options.iter().any(|s| validate(root, s, v, path).is_ok()) {
            return Err(format!("{path}: matches no anyOf branch"));
        }
    }
    if let Some(t) = schema.get("type").and_then(Value::as_str) {
        let ok = match t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "integer" => v.is_u64() || v.is_i64(),
            "null" => v.is_null(),
            other => return Err(format!("unsupported type {other}")),
        };
        if !ok {
            return Err(format!("{path}: expected {t}, got {v}"));
        }
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(v) {
            return Err(format!("{path}: {v} not in enum"));
        }
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_i64) {
        if v.as_i64().is_some_and(|x| x < min) {
            return Err(format!("{path}: {v} below {min}"));
        }
    }
    if let Some(obj) = v.as_object() {
        for key in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
            let key = key.as_str().unwrap();
            if !obj.contains_key(key) {
                return Err(format!("{path}: missing {key}"));
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        for (key, val) in obj {
            let sub = format!("{path}.{key}");
            match (props.and_then(|p| p.get(key)), schema.get("additionalProperties")) {
                (Some(s), _) => validate(root, s, val, &sub)?,
                (None, Some(Value::Bool(false))) => return Err(format!("{sub}: not allowed")),
                (None, Some(s)) if s.is_object() => validate(root, s, val, &sub)?,
                _ => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), v.as_array()) {
        for (i, item) in arr.iter().enumerate() {
            validate(root, items, item, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn check(report: &CheckReport) -> Result<(), String> {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let value = serde_json::to_value(report).unwrap();
    validate(&schema, &schema, &value, "$")
}

#[test]
fn every_suite_report_validates() {
    for suite in Suite::ALL {
        let mut last = None;
        let report = run_suite(suite, SuiteOptions::new(6), None, |r| last = Some(r.clone())).unwrap();
        check(&report).unwrap_or_else(|e| panic!("{suite}: {e}"));
        check(&last.unwrap()).unwrap();
        assert_eq!(report.passed(), report.counterexamples.is_empty());
    }
}

#[test]
fn failing_report_validates_and_file_roundtrips() {
    let report = CheckReport {
        verdict: Verdict::Fail,
        counterexamples: vec![Counterexample::new(
            params! {"n" => 5usize, "k" => 2usize, "i" => 2usize},
            "q^4 + q^5 + q^6",
            "q^4 + 2*q^5 + q^6",
        )],
        cases_checked: 3,
        last_completed: Some(params! {"n" => 5usize}),
        ..CheckReport::new("formula-vs-oracle", params! {"max_n" => 5usize})
    };
    check(&report).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    report.save(&path).unwrap();
    assert_eq!(CheckReport::load(&path).unwrap(), report);
    assert!(!path.with_extension("json.partial").exists());
}

#[test]
fn schema_rejects_malformed_reports() {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let good = serde_json::to_value(CheckReport::new("catalan", params! {"max_n" => 3usize})).unwrap();
    assert!(validate(&schema, &schema, &good, "$").is_ok());

    let mut bad = good.clone();
    bad["verdict"] = "maybe".into();
    assert!(validate(&schema, &schema, &bad, "$").is_err());

    let mut bad = good.clone();
    bad.as_object_mut().unwrap().remove("elapsed_ms");
    assert!(validate(&schema, &schema, &bad, "$").is_err());

    let mut bad = good;
    bad["parameters"]["max_n"] = serde_json::json!(-1);
    assert!(validate(&schema, &schema, &bad, "$").is_err());
}
