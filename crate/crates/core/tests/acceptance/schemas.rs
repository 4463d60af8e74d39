//! Every JSON document the binary emits validates against the schema in docs/schemas.

use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::common::serial;
use crate::run_cli;

fn schema(name: &str) -> jsonschema::Validator {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "schemas", &format!("{name}.schema.json")]
        .iter()
        .collect();
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

/// Schema for a written file, by its default name.
fn schema_for(file: &str) -> &'static str {
    let base = Path::new(file).file_name().unwrap().to_str().unwrap();
    if base == "summary.json" {
        "conjectures"
    } else if base.contains("-polytope-") {
        "spectral-polytope"
    } else if base.starts_with("samples-") {
        "samples"
    } else {
        "enumerate"
    }
}

fn errors(v: &jsonschema::Validator, doc: &Value) -> Vec<String> {
    v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path)).collect()
}

#[test]
fn emitted_json_matches_schemas() {
    let _g = serial();
    let file_commands: &[&[&str]] = &[
        &["enumerate", "stab", "-d", "3", "-n", "1"],
        &["enumerate", "lambda", "-d", "2", "-n", "1"],
        &["enumerate", "lambda", "-d", "3", "-n", "1"],
        &["enumerate", "cnc", "-d", "2", "-n", "2"],
        &["enumerate", "cnc", "-d", "3", "-n", "1"],
        &["enumerate", "phasepoints", "-d", "5", "-n", "1"],
        &["spectral-polytope", "astab", "-d", "2", "-n", "2"],
        &["spectral-polytope", "astab", "-d", "2", "-n", "3"],
        &["spectral-polytope", "astab", "-d", "3", "-n", "1"],
        &["spectral-polytope", "awp", "-d", "3", "-n", "2"],
        &["spectral-polytope", "awp", "-d", "7", "-n", "1"],
        &["sample", "-n", "2", "--count", "5", "--seed", "1"],
        &["conjectures", "-n", "1", "--exhaustive", "--out", "conj"],
        &["conjectures", "-n", "2", "--samples", "20", "--seed", "2", "--out", "conj"],
    ];
    let stdout_commands: &[(&[&str], &str)] = &[
        (&["test", "-d", "3", "-n", "1", "--spectrum", "0.5,0.5,0"], "report"),
        (&["test", "--spectrum", "uniform"], "report"),
        (&["test", "-d", "2", "-n", "3", "--spectrum", "0.3,0.3,0.2,0.2,0,0,0,0"], "report"),
        (&["test", "-d", "5", "-n", "1", "--spectrum", "0.6,0.1,0.1,0.1,0.1"], "report"),
        (&["radii", "-d", "2", "-n", "2"], "radii"),
        (&["radii", "-d", "7", "-n", "1"], "radii"),
    ];
    let summary = schema("summary");
    let mut failures = Vec::new();
    let mut checked = 0;
    for args in file_commands {
        let (code, stdout, files) = run_cli(args);
        assert_eq!(code, 0, "`astab {}` failed", args.join(" "));
        let line: Value = serde_json::from_slice(&stdout).unwrap();
        failures.extend(errors(&summary, &line).into_iter().map(|e| format!("summary of {}: {e}", args.join(" "))));
        for (name, bytes) in files.iter().filter(|(n, _)| n.ends_with(".json")) {
            let doc: Value = serde_json::from_slice(bytes).unwrap();
            let errs = errors(&schema(schema_for(name)), &doc);
            failures.extend(errs.into_iter().map(|e| format!("{name}: {e}")));
            checked += 1;
        }
    }
    for (args, name) in stdout_commands {
        let (code, stdout, _) = run_cli(args);
        assert_eq!(code, 0, "`astab {}` failed", args.join(" "));
        let doc: Value = serde_json::from_slice(&stdout).unwrap();
        failures.extend(errors(&schema(name), &doc).into_iter().map(|e| format!("{}: {e}", args.join(" "))));
        checked += 1;
    }
    // an operator written by hand in the documented input format
    let op: Value = serde_json::json!({"d": 3, "n": 1, "label": "generic",
        "re": [[0.5, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 0.0]],
        "im": [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]});
    failures.extend(errors(&schema("operator"), &op));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("op.json");
    std::fs::write(&path, op.to_string()).unwrap();
    let (code, stdout, _) = run_cli(&["test", "--matrix", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_slice(&stdout).unwrap();
    failures.extend(errors(&schema("report"), &report).into_iter().map(|e| format!("--matrix report: {e}")));
    // the schemas are not vacuous
    let mut bad = report.clone();
    bad["verdicts"]["astab"] = "maybe".into();
    assert!(!schema("report").is_valid(&bad));
    let mut bad = op.clone();
    bad.as_object_mut().unwrap().remove("im");
    assert!(!schema("operator").is_valid(&bad));
    println!("validated {checked} documents");
    assert!(failures.is_empty(), "schema violations:\n{}", failures.join("\n"));
    assert!(checked >= 20);
}
