//! The command-line front end: goldens, exit codes, JSON schemas, determinism.

use std::path::{Path, PathBuf};

use defquant::cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;

fn problems() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/problems")
}

fn problem(name: &str) -> String {
    problems().join(name).to_string_lossy().into_owned()
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(schema_name: &str, instance: &Value) {
    let validator = jsonschema::validator_for(&schema(schema_name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:#?}");
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["defquant"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = cli(&full);
    let text = if out.is_empty() { err } else { out };
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

#[test]
fn relation_goldens() {
    let cases = [
        ("weyl.toml", vec!["x1*x2 - x2*x1 - h"]),
        ("heisenberg.toml", vec!["x1*x2 - x2*x1 - h*x3", "x1*x3 - x3*x1", "x2*x3 - x3*x2"]),
        ("sl2.toml", vec!["x1*x2 - x2*x1 - h*x3", "x1*x3 - x3*x1 + h*x2", "x2*x3 - x3*x2 - h*x1"]),
        ("solvable2.toml", vec!["x1*x2 - x2*x1 - h*x1"]),
        ("quantum_plane.toml", vec!["x1*x2 - x2*x1 - (h/2)*(x1*x2 + x2*x1)  (mod h^2)"]),
    ];
    for (file, expected) in cases {
        let (code, out, _) = cli(&["relations", &problem(file)]);
        assert_eq!(code, EXIT_PASS);
        assert_eq!(out.lines().collect::<Vec<_>>(), expected, "{file}");
    }
}

#[test]
fn normal_form_and_star_goldens() {
    assert_eq!(cli(&["normal-form", &problem("weyl.toml"), "x2*x1"]).1.trim(), "x1*x2 - h");
    assert_eq!(cli(&["normal-form", &problem("quantum_plane.toml"), "x2*x1"]).1.trim(), "x1*x2 - h*x1*x2  (mod h^2)");
    assert_eq!(cli(&["star", &problem("weyl.toml"), "x1", "x2"]).1.trim(), "x1*x2 + (1/2)h");
    assert_eq!(cli(&["star", &problem("weyl.toml"), "x2", "x1"]).1.trim(), "x1*x2 - (1/2)h");
}

#[test]
fn components_file_reproduces_relations() {
    let comps = problems().join("heisenberg_components.json");
    let (code, out, _) = cli(&["relations", &problem("heisenberg.toml"), "--components", comps.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out, cli(&["relations", &problem("heisenberg.toml")]).1);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&comps).unwrap()).unwrap();
    assert_valid("components.schema.json", &v);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(cli(&["verify", &problem("weyl.toml")]).0, EXIT_PASS);
    assert_eq!(cli(&["verify", &problem("heisenberg.toml")]).0, EXIT_PASS);
    assert_eq!(cli(&["verify", &problem("weyl.toml"), "--mutation", "flip-delta-sign"]).0, EXIT_FAIL);
    assert_eq!(cli(&["verify", &problem("sl2.toml"), "--mutation", "broken-jacobi"]).0, EXIT_FAIL);
    assert_eq!(cli(&["verify", &problem("weyl.toml"), "--suite", "koszul", "--max-weight", "3"]).0, EXIT_PASS);
    assert_eq!(cli(&["verify", &problem("weyl.toml"), "--bogus"]).0, EXIT_USAGE);
}

#[test]
fn problem_files_match_schema() {
    for entry in std::fs::read_dir(problems()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            let v: Value = toml::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
            assert_valid("problem.schema.json", &v);
        }
    }
    let validator = jsonschema::validator_for(&schema("problem.schema.json")).unwrap();
    assert!(!validator.is_valid(&serde_json::json!({ "dim": 0 })));
    assert!(!validator.is_valid(&serde_json::json!({ "dim": 2, "extra": 1 })));
}

#[test]
fn json_outputs_match_schemas() {
    let (code, v) = json(&["relations", &problem("sl2.toml")]);
    assert_eq!(code, EXIT_PASS);
    assert_valid("relations.schema.json", &v);
    assert_eq!(v["relations"][2]["relation"], "x2*x3 - x3*x2 - h*x1");

    let (_, v) = json(&["relations", &problem("quantum_plane.toml")]);
    assert_valid("relations.schema.json", &v);

    let (code, v) = json(&["cohomology", &problem("heisenberg.toml"), "--max-weight", "3"]);
    assert_eq!(code, EXIT_PASS);
    assert_valid("cohomology.schema.json", &v);

    for file in ["weyl.toml", "quantum_plane.toml"] {
        let (_, v) = json(&["verify", &problem(file)]);
        assert_valid("report.schema.json", &v);
        assert_eq!(v["passed"], true);
    }
    let (code, v) = json(&["verify", &problem("sl2.toml"), "--mutation", "corrupt-rule"]);
    assert_eq!(code, EXIT_FAIL);
    assert_valid("report.schema.json", &v);
    assert_eq!(v["passed"], false);

    let (code, v) = json(&["relations", &problem("missing.toml")]);
    assert_eq!(code, EXIT_USAGE);
    assert_valid("error.schema.json", &v);
    assert_eq!(v["error"]["code"], "io");
}

#[test]
fn parse_errors_report_positions() {
    let dir = std::env::temp_dir().join(format!("defquant-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "dim = 2\n[[pi]]\ni = 1\nj = 2\nvalue = \"x1 * * x2\"\n").unwrap();
    let (code, v) = json(&["relations", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert_valid("error.schema.json", &v);
    assert_eq!((v["error"]["code"].as_str(), v["error"]["line"].as_u64()), (Some("parse"), Some(5)));

    let (code, v) = json(&["normal-form", &problem("weyl.toml"), "x1 +"]);
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(v["error"]["code"], "parse");
    std::fs::remove_dir_all(dir).unwrap();
}

/// Text outputs parse back to the same element.
#[test]
fn outputs_round_trip() {
    use defquant::algebra::Names;
    use defquant::expr::{parse_nc, parse_sym};
    let names = Names::standard(3);
    let out = cli(&["normal-form", &problem("sl2.toml"), "x3*x2*x1"]).1;
    let nf = parse_nc(out.trim(), &names, 4).unwrap();
    let again = cli(&["normal-form", &problem("sl2.toml"), out.trim()]).1;
    assert_eq!(parse_nc(again.trim(), &names, 4).unwrap(), nf);

    let out = cli(&["star", &problem("sl2.toml"), "x1^2", "x2*x3"]).1;
    assert!(parse_sym(out.trim(), &names, 4).is_ok());
}

#[test]
fn outputs_are_deterministic() {
    let args = ["--format", "json", "verify", &problem("sl2.toml")];
    let a = cli(&args).1;
    let b = cli(&args).1;
    assert_eq!(a, b);
    let args = ["--format", "json", "verify", &problem("weyl.toml"), "--mutation", "perturb-symmetrization", "--seed", "7"];
    assert_eq!(cli(&args).1, cli(&args).1);
}
