//! End-to-end tests of the command-line interface, in process and through the binary.

use std::path::Path;
use std::process::Command;

use serde_json::Value;

use branchfold::cli::run;

fn run_in(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["branchfold"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn installed() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run_in(&["fixtures", "install", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    dir
}

fn ws(dir: &Path) -> String {
    dir.to_str().unwrap().to_string()
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/cli-output.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let (code, out, _) = run_in(args);
    let doc: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}"));
    let v = schema();
    assert!(v.is_valid(&doc), "{doc}");
    (code, doc)
}

#[test]
fn goodness_exit_codes() {
    let dir = installed();
    let w = ws(dir.path());
    let (code, out, _) = run_in(&["--workspace", &w, "check", "good", "--complex", "octa", "--sub", "poles"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("true"));
    let (code, _, _) = run_in(&["--workspace", &w, "check", "good", "--complex", "octa", "--sub", "octa-edge"]);
    assert_eq!(code, 1);
}

#[test]
fn three_sheet_cover_report() {
    let dir = installed();
    let w = ws(dir.path());
    let (code, doc) = json_of(&["--json", "--workspace", &w, "cover", "build", "--monodromy", "fig3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["command"], "cover build");
    assert_eq!(doc["result"]["degree"], 3);
    assert_eq!(doc["result"]["euler_total"], 2);
}

#[test]
fn json_errors_and_usage() {
    let (code, doc) = json_of(&["--json", "check", "pm", "--complex", "/nonexistent/file.json"]);
    assert_eq!(code, 2);
    assert!(doc["error"].as_str().unwrap().contains("nonexistent"));
    let (code, _, err) = run_in(&["cover", "frobnicate"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn cone_commands() {
    let (code, out, _) =
        run_in(&["cone", "dist", "--k", "0", "--t1", "3", "--t2", "4", "--theta", "1.5707963267948966"]);
    assert_eq!(code, 0);
    assert!(out.contains("5.0000"), "{out}");
    let (code, doc) = json_of(&["--json", "cone", "model", "2/3 tau"]);
    assert_eq!(code, 0);
    assert_eq!((doc["result"]["model"]["h"].as_u64(), doc["result"]["model"]["k"].as_u64()), (Some(3), Some(2)));
    let (code, doc) = json_of(&["--json", "--seed", "7", "cone", "rational", "1/3 tau", "4.442882938158366"]);
    assert_eq!(code, 1);
    assert_eq!(doc["seed"], 7);
    assert_eq!(doc["verdict"], false);
}

#[test]
fn chart_commands() {
    let dir = installed();
    let w = ws(dir.path());
    let (code, out, _) = run_in(&["--workspace", &w, "chart", "index", "fig1-3-2"]);
    assert_eq!((code, out.trim()), (0, "3/2"));
    let (code, _, _) = run_in(&["--workspace", &w, "chart", "validate", "fig2"]);
    assert_eq!(code, 0);
    let (code, _, _) = run_in(&["--workspace", &w, "chart", "equiv", "fig1-3-2", "fig1-2-1"]);
    assert_eq!(code, 1);
    let (code, doc) = json_of(&["--json", "--workspace", &w, "branchfold", "pi1", "sphere-3-2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["abelianization"], "Z3");
}

#[test]
fn workspace_outputs_are_recorded() {
    let dir = installed();
    let w = ws(dir.path());
    let (code, out, _) = run_in(&["--workspace", &w, "cover", "build", "--monodromy", "fig3", "--out", "fig3-cover"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run_in(&["--workspace", &w, "cover", "regularize", "fig3-cover", "--out", "fig3-reg"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run_in(&["--workspace", &w, "cover", "analyze", "fig3-reg"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains('6'));
    let (code, _, _) = run_in(&["fixtures", "verify", "--dir", &w]);
    assert_eq!(code, 0);
    let manifest = std::fs::read_to_string(dir.path().join("manifest.json")).unwrap();
    let entry = manifest.lines().find(|l| l.contains("pole-cover")).unwrap().to_string();
    let file = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.file_name().unwrap().to_str().unwrap().starts_with("pole-cover."))
        .unwrap();
    std::fs::write(&file, "{}\n").unwrap();
    let (code, _, _) = run_in(&["fixtures", "verify", "--dir", &w]);
    assert_eq!(code, 1, "{entry}");
}

#[test]
fn binary_runs() -> anyhow::Result<()> {
    let bin = env!("CARGO_BIN_EXE_branchfold");
    let out = Command::new(bin).args(["--json", "cone", "angle", "--h", "3", "--k", "1"]).output()?;
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout)?;
    assert!(schema().is_valid(&doc));
    let bad = Command::new(bin).args(["cone", "angle", "--h", "4", "--k", "2"]).output()?;
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
    Ok(())
}

#[test]
fn binary_quotient_of_installed_rotation() -> anyhow::Result<()> {
    let bin = env!("CARGO_BIN_EXE_branchfold");
    let dir = tempfile::tempdir()?;
    let w = ws(dir.path());
    let status = Command::new(bin).args(["fixtures", "install", "--dir", &w]).output()?.status;
    anyhow::ensure!(status.success(), "install failed");
    let out = Command::new(bin).args(["--workspace", &w, "action", "quotient", "octa-rot.action.json"]).output()?;
    let text = String::from_utf8(out.stdout)?;
    anyhow::ensure!(text.contains("chi: 2") && text.contains("branch vertices: 2"), "unexpected output: {text}");
    Ok(())
}
