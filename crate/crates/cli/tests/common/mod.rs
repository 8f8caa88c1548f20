#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn gem(args: &[&str]) -> Output {
    gem_styled(args, false)
}

pub fn gem_styled(args: &[&str], ansi: bool) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gem").chain(args.iter().copied());
    let code = gem_cli::run(argv, &mut out, &mut err, ansi);
    Output {
        code,
        stdout: String::from_utf8(out).expect("utf-8 stdout"),
        stderr: String::from_utf8(err).expect("utf-8 stderr"),
    }
}

pub fn corpus(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/golden")
        .join(name)
}

/// Compares against a golden file; `UPDATE_GOLDEN=1` rewrites it instead.
pub fn assert_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var("UPDATE_GOLDEN").is_ok() {
        fs::write(&path, actual).expect("write golden file");
        return;
    }
    assert!(golden_matches(name, actual), "golden file mismatch: {name}");
}

pub fn golden_matches(name: &str, actual: &str) -> bool {
    let path = golden_path(name);
    let expected = fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("missing golden file {}: {e}", path.display()));
    expected == actual
}

pub fn schema(name: &str) -> serde_json::Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/schema")
        .join(name);
    let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).expect("schema is JSON")
}

const BASE: &str = "https://gemtopo.invalid/schema/";

/// Validation errors of `instance` against a schema fragment such as
/// `diagram.schema.json` or `reports.schema.json#/$defs/info`.
pub fn schema_errors(target: &str, instance: &serde_json::Value) -> Vec<String> {
    let registry = jsonschema::Registry::new()
        .add(
            format!("{BASE}diagram.schema.json"),
            schema("diagram.schema.json"),
        )
        .and_then(|r| {
            r.add(
                format!("{BASE}reports.schema.json"),
                schema("reports.schema.json"),
            )
        })
        .and_then(|r| r.prepare())
        .expect("schemas register");
    let root = serde_json::json!({ "$ref": format!("{BASE}{target}") });
    let validator = jsonschema::options()
        .with_registry(&registry)
        .build(&root)
        .expect("schema compiles");
    validator
        .iter_errors(instance)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect()
}
