use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qlo_cli::config::{parse_config, MonoidConfig};
use qlo_core::presets;

fn qlo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlo"))
        .args(args)
        .env("QLO_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

#[test]
fn beta_c_of_free_monoid() {
    let out = qlo(&["beta-c", "--preset", "free:2", "--tol", "1e-12"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0.693147180559945\n");
}

#[test]
fn clique_polynomial_text() {
    let out = qlo(&["clique-poly", "--preset", "abelian:2"]);
    assert_eq!(stdout(&out), "1 - 2*t^1 + 1*t^2\n");
    let out = qlo(&["clique-poly", "--config", golden("abelian-2-weighted.json").to_str().unwrap()]);
    assert_eq!(stdout(&out), "1 - 1*t^1 - 1*t^(3/2) + 1*t^(5/2)\n");
}

#[test]
fn verify_path_graph() {
    let out = qlo(&["verify", "--preset", "path:3", "--cutoff", "10"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.lines().all(|l| !l.starts_with("FAIL")), "{text}");
}

#[test]
fn growth_csv_header_and_rows() {
    let out = qlo(&["growth", "--preset", "path:3", "--cutoff", "3", "--format", "csv"]);
    assert_eq!(stdout(&out), "lambda_num,lambda_den,a_n\n0,1,1\n1,1,3\n2,1,7\n3,1,15\n");
    let path = golden("abelian-2-weighted.json");
    let out = qlo(&["growth", "--config", path.to_str().unwrap(), "--cutoff", "2", "--format", "csv"]);
    assert_eq!(stdout(&out), "lambda_num,lambda_den,a_n\n0,1,1\n1,1,1\n3,2,1\n2,1,1\n");
}

#[test]
fn json_outputs_parse() {
    for args in [
        vec!["growth", "--preset", "free:2", "--cutoff", "4", "--format", "json"],
        vec!["roots", "--preset", "path:3", "--format", "json"],
        vec!["invert", "--preset", "cycle:5", "--cutoff", "5", "--format", "json"],
        vec!["limsup", "--preset", "free:2", "--cutoff", "10", "--format", "json"],
        vec!["gibbs", "--preset", "path:3", "--beta", "1.2", "--cutoff", "6", "--format", "json"],
        vec!["kms-check", "--preset", "path:3", "--beta", "1.2", "--cutoff", "6", "--samples", "10", "--format", "json"],
    ] {
        let out = qlo(&args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert!(v.is_object(), "{args:?}");
    }
}

#[test]
fn roots_csv_lists_double_root_once() {
    let out = qlo(&["roots", "--preset", "abelian:2", "--format", "csv"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "value,lower,upper,multiplicity,exact,merged");
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("1.00000000000000,"));
    assert!(lines[1].contains(",2,true,"));
}

#[test]
fn kms_check_passes() {
    let out = qlo(&["kms-check", "--preset", "free:2", "--beta", "1.5", "--cutoff", "8", "--samples", "50"]);
    let text = stdout(&out);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("symbolic identity holds: 50/50"));
    assert!(text.contains("within truncation bound: 50/50"));
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(qlo(&["beta-c"]).status.code(), Some(2));
    assert_eq!(qlo(&["frobnicate", "--preset", "free:2"]).status.code(), Some(2));
    assert_eq!(qlo(&["beta-c", "--preset", "free:2", "--config", "x.json"]).status.code(), Some(2));
    // validation errors
    assert_eq!(qlo(&["beta-c", "--preset", "torus:2"]).status.code(), Some(3));
    assert_eq!(qlo(&["growth", "--preset", "free:2", "--cutoff=-1"]).status.code(), Some(3));
    assert_eq!(qlo(&["beta-c", "--preset", "free:2", "--tol", "0"]).status.code(), Some(3));
    assert_eq!(qlo(&["beta-c", "--config", "/nonexistent/config.json"]).status.code(), Some(3));
    // computation errors
    let out = qlo(&["gibbs", "--preset", "free:2", "--beta", "0.5", "--cutoff", "4"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("critical"));
    assert_eq!(qlo(&["limsup", "--preset", "free:2", "--cutoff", "0"]).status.code(), Some(4));
}

#[test]
fn bad_thread_cap_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_qlo"))
        .args(["beta-c", "--preset", "free:2"])
        .env("QLO_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_with_self_loop_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("loop.json");
    std::fs::write(
        &path,
        r#"{"generators": [{"name": "a", "weight": {"num": 1, "den": 1}}], "commuting_pairs": [["a", "a"]]}"#,
    )
    .unwrap();
    let out = qlo(&["beta-c", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("commuting_pairs[0]"));
}

#[test]
fn golden_configs_match_presets() {
    for (file, preset) in [
        ("free-2.json", "free:2"),
        ("abelian-2.json", "abelian:2"),
        ("path-3.json", "path:3"),
        ("cycle-5.json", "cycle:5"),
    ] {
        let config = parse_config(&golden(file)).unwrap();
        assert_eq!(config.to_graph().unwrap(), presets::parse(preset).unwrap(), "{file}");
        let a = stdout(&qlo(&["growth", "--config", golden(file).to_str().unwrap(), "--cutoff", "6", "--format", "csv"]));
        let b = stdout(&qlo(&["growth", "--preset", preset, "--cutoff", "6", "--format", "csv"]));
        assert_eq!(a, b, "{file}");
    }
}

#[test]
fn emitted_config_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let weighted = golden("abelian-2-weighted.json");
    for source in [["--preset", "cycle:5"], ["--config", weighted.to_str().unwrap()]] {
        let mut args = vec!["emit-config"];
        args.extend(source);
        let emitted = stdout(&qlo(&args));
        let path = dir.path().join("emitted.json");
        std::fs::write(&path, &emitted).unwrap();
        let parsed = parse_config(&path).unwrap();
        assert_eq!(parsed.emit() + "\n", emitted);
        let again: MonoidConfig = serde_json::from_str(&emitted).unwrap();
        assert_eq!(again, parsed);
    }
}
