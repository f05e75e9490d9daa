use std::process::{Command, Output};

use dgpp::serialize::{complex_from_json, ComplexJson};
use dgpp_core::{Field, Gamma, Quiver};
use serde_json::Value;

fn dgpp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgpp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn default_suite_passes_on_a2() {
    let o = dgpp(&["check", "--suite", "acceptance"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 10);
}

#[test]
fn small_window_is_reported_as_insufficient() {
    let o = dgpp(&["check", "--suite", "acceptance", "-W", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).lines().filter(|l| l.starts_with("WINDOW")).count() >= 2);
}

#[test]
fn configuration_errors_exit_with_two() {
    for args in [
        vec!["--quiver", "Z9", "gamma"],
        vec!["--quiver", "1->1", "gamma"],
        vec!["--quiver", "1->2, 2->1", "gamma"],
        vec!["-W", "2", "gamma"],
        vec!["--field", "Fp:9", "gamma"],
        vec!["--degree-window", "-1..1", "gamma"],
        vec!["--parallelism", "0", "gamma"],
        vec!["braid-map", "1 7"],
    ] {
        let o = dgpp(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
    let o = dgpp(&["--quiver", "1->2, 2->2", "gamma"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("loop (at 6)"));
}

#[test]
fn dot_export_is_deterministic() {
    let a = dgpp(&["export", "--dot", "--interval", "1"]);
    let b = dgpp(&["export", "--dot", "--interval", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 6);
    assert!(text.starts_with("digraph silting {"));
}

#[test]
fn trivial_interval_is_gamma_alone() {
    let text = stdout(&dgpp(&["export", "--dot", "--interval", "0"]));
    let nodes: Vec<&str> = text.lines().filter(|l| l.contains("[label=") && !l.contains("->")).collect();
    assert_eq!(nodes.len(), 1);
    assert!(nodes[0].contains("label=\"Γ"));
}

#[test]
fn report_records_the_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = dgpp(&["--quiver", "A3", "-W", "6", "verify", "resolution", "--report", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["quiver"], "A3");
    assert_eq!(report["field"], "Q");
    assert_eq!(report["W"], 6);
    assert_eq!(report["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(report["verdict"], "pass");
}

#[test]
fn quiver_from_a_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    std::fs::write(&path, r#"{"vertices":["x","y","z"],"arrows":[{"id":"p","from":"x","to":"y"},{"id":"q","from":"z","to":"y"}]}"#).unwrap();
    let o = dgpp(&["--quiver", path.to_str().unwrap(), "--format", "json", "gamma"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["result"]["letters"].as_array().unwrap().len(), 7);
}

#[test]
fn braid_words_compare() {
    assert_eq!(stdout(&dgpp(&["braid-eq", "1 2 1", "2 1 2"])).trim(), "equal");
    assert_eq!(stdout(&dgpp(&["braid-eq", "1 2", "2 1"])).trim(), "distinct");
    assert_eq!(stdout(&dgpp(&["--quiver", "A3", "braid-eq", "1 3", "3 1"])).trim(), "equal");
}

#[test]
fn exported_objects_read_back() {
    let o = dgpp(&["--quiver", "A3", "--format", "json", "braid-map", "1 2' 3"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let g = Gamma::new(Quiver::a(3), Field::Rational);
    for block in report["result"]["object"]["blocks"].as_array().unwrap() {
        let c: ComplexJson = serde_json::from_value(block.clone()).unwrap();
        complex_from_json(&g, &c).unwrap();
    }
}

#[test]
fn prime_field_agrees_on_spherical_check() {
    for field in ["Q", "Fp:32003"] {
        let o = dgpp(&["--quiver", "D4", "--field", field, "spherical-check", "3"]);
        assert_eq!(o.status.code(), Some(0), "{field}");
    }
}
