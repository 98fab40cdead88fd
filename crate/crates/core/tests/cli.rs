//! End-to-end tests of the `redzone` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn redzone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redzone")).args(args).output().unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    std::fs::write(dir.join(name), text).unwrap();
    path(dir, name)
}

fn schema(name: &str) -> Value {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schema", name].iter().collect();
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn assert_valid(schema_name: &str, doc: &Value) {
    let validator = jsonschema::validator_for(&schema(schema_name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}");
}

const DETERMINISTIC_TYPE1: &str = r#"{
  "schema_version": 1,
  "system": {
    "hazard": { "useful_rate": 0.0, "burnin": { "scale": 0.0, "shape": 0.5 }, "wearout": { "scale": 0.0, "shape": 3.0 } },
    "lifetime": { "mean": 200.0, "sd": 0.0 },
    "lab_burnin": 0.0
  },
  "simulation": { "replications": 5, "master_seed": 1 }
}"#;

#[test]
fn hazard_csv_has_fixed_header_and_flat_useful_phase() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"schema_version": 1, "system": {"hazard": {"useful_rate": 0.001, "burnin": {"scale": 0.0, "shape": 0.5}, "wearout": {"scale": 0.0, "shape": 3.0}}}}"#,
    );
    let out = path(dir.path(), "h.csv");
    assert!(redzone(&["hazard", "--config", &cfg, "--out", &out, "--t-max", "100", "--dt", "0.5"]).status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t_weeks,h_hardware,h_software,h_operate,h_system"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 201);
    assert!(rows.iter().all(|r| r.len() == 5 && r[1] == "0.001" && r[4] == "0.001"));
}

#[test]
fn hazard_csv_matches_the_bathtub_pointwise() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "h.csv");
    assert!(redzone(&["hazard", "--out", &out]).status.success());
    let model = redzone::system::SystemConfig::default().hazard;
    let text = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (f[0], f[1])
        })
        .collect();
    for &(t, h) in &rows {
        assert_eq!(h, model.hazard(t).unwrap());
    }
    // U shape: falls through burn-in, rises through wear-out.
    let h = |t: f64| rows.iter().find(|r| r.0 == t).unwrap().1;
    assert!(h(1.0) > h(100.0) && h(240.0) > h(100.0));
}

#[test]
fn malformed_config_exits_1_with_field_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "h.csv");
    let bad = write(dir.path(), "bad.json", r#"{"schema_version": 1, "system": {"hazard": {"th1": -5}}}"#);
    let o = redzone(&["hazard", "--config", &bad, "--out", &out]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("system.hazard.th1"));

    let unknown = write(dir.path(), "unknown.json", r#"{"schema_version": 1, "simulation": {"replicas": 5}}"#);
    let o = redzone(&["simulate", "--config", &unknown, "--out", &out]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("simulation"));

    let o = redzone(&["hazard", "--config", &path(dir.path(), "missing.json"), "--out", &out]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(redzone(&["simulate", "--bogus"]).status.code(), Some(1));
    assert_eq!(redzone(&["--help"]).status.code(), Some(0));
}

#[test]
fn type2_without_period_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "o.json");
    let cfg = write(dir.path(), "c.json", r#"{"schema_version": 1, "policy": {"kind": "type2"}}"#);
    let o = redzone(&["simulate", "--config", &cfg, "--out", &out, "--replications", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("policy.rotation_period"));
    let o = redzone(&["compare", "--config", &cfg, "--out", &out, "--replications", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn numeric_failure_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "h.csv");
    let o = redzone(&["hazard", "--out", &out, "--dt", "0"]);
    assert_eq!(o.status.code(), Some(1));
    // Output directory that does not exist: an I/O failure at run time.
    let o = redzone(&["hazard", "--out", &path(dir.path(), "no/such/dir/h.csv")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scenario_emits_segments_and_annotated_curve() {
    let dir = tempfile::tempdir().unwrap();
    let worked = write(dir.path(), "w.json", r#"{"schema_version": 1, "system": {"lifetime": {"mean": 220.0, "sd": 1.0}}}"#);
    let out = path(dir.path(), "scen.csv");
    let o = redzone(&["scenario", "--config", &worked, "--out", &out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t_start,t_end,units,phases,composition,end_markers,red_zone"));
    let starts: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(starts, ["0", "200", "220", "221", "239"]);
    assert!(text.contains("controller_3"));
    let curve = std::fs::read_to_string(dir.path().join("scen_curve.csv")).unwrap();
    assert!(curve.starts_with("t_weeks,h_system,red_zone\n"));
    assert!(curve.lines().skip(1).any(|l| l.ends_with(",1")), "tight stagger must annotate a red zone");

    let wide = write(dir.path(), "wide.json", r#"{"schema_version": 1, "system": {"lifetime": {"mean": 220.0, "sd": 80.0}}}"#);
    let out = path(dir.path(), "wide.csv");
    assert!(redzone(&["scenario", "--config", &wide, "--out", &out]).status.success());
    let curve = std::fs::read_to_string(dir.path().join("wide_curve.csv")).unwrap();
    assert!(curve.lines().skip(1).all(|l| l.ends_with(",0")));
    assert!(std::fs::read_to_string(&out).unwrap().lines().skip(1).all(|l| l.ends_with(",false")));
}

#[test]
fn simulate_deterministic_type1() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", DETERMINISTIC_TYPE1);
    let out = path(dir.path(), "s.json");
    let events = path(dir.path(), "e.csv");
    let o = redzone(&["simulate", "--config", &cfg, "--out", &out, "--events", &events]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_valid("simulate_summary.schema.json", &doc);
    assert_eq!(doc["trdd_weeks"]["mean"], 200.0);
    assert_eq!(doc["tdt_weeks"]["mean"], 400.0);
    assert_eq!(doc["tdt_weeks"]["std"], 0.0);
    assert_eq!(doc["dp_weeks"]["mean"], 160.0);
    assert_eq!(doc["tdr_weeks"]["mean"], 240.0);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["seed"], 1);
    let ev = std::fs::read_to_string(&events).unwrap();
    assert!(ev.starts_with("replication,time_weeks,kind,unit,slot,unit_out\n"));
    assert!(ev.contains("0,200,replace,controller_3,slot_1,controller_1\n"));
    assert!(ev.contains("0,400,system_death,,,\n"));
}

#[test]
fn simulate_single_replication_has_zero_std_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(dir.path(), "a.json");
    let b = path(dir.path(), "b.json");
    for out in [&a, &b] {
        assert!(redzone(&["simulate", "--out", out, "--replications", "1", "--seed", "9"]).status.success());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["tdt_weeks"]["std"], 0.0);
    assert_eq!(doc["trdd_weeks"]["std"], 0.0);
}

#[test]
fn compare_report_validates_and_extends_redundancy() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"schema_version": 1, "policy": {"rotation_period": 36.666666666666664}, "simulation": {"replications": 1000}}"#,
    );
    let out = path(dir.path(), "cmp.json");
    let o = redzone(&["compare", "--config", &cfg, "--out", &out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_valid("compare_report.schema.json", &doc);
    let ext = doc["extension_ratio"].as_f64().unwrap();
    assert!((0.40..=0.55).contains(&ext), "{ext}");
    assert_eq!(doc["type1"]["policy"], "type1");
    assert_eq!(doc["type2"]["policy"], "type2");
}

#[test]
fn redzone_sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"schema_version": 1, "simulation": {"replications": 2000}, "analysis": {"sweep_delta_ratios": [0.1, 4.0]}}"#,
    );
    let out = path(dir.path(), "rz.csv");
    assert!(redzone(&["redzone", "--config", &cfg, "--out", &out]).status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "delta_weeks,delta_over_th3,predicted,detected,severity,red_zone_start,red_zone_end,trdd_mean_weeks,tdt_mean_weeks"
    );
    assert!(lines[1].starts_with("4,0.1,true,true,"));
    assert!(lines[2].starts_with("160,4,false,false,"));
}

#[test]
fn shipped_run_config_schema_accepts_defaults_and_examples() {
    let default = serde_json::to_value(redzone::cli::RunConfig::default()).unwrap();
    assert_valid("run_config.schema.json", &default);
    let examples: PathBuf = [env!("CARGO_MANIFEST_DIR"), "examples", "configs"].iter().collect();
    for entry in std::fs::read_dir(examples).unwrap() {
        let p = entry.unwrap().path();
        let text = std::fs::read_to_string(&p).unwrap();
        assert_valid("run_config.schema.json", &serde_json::from_str(&text).unwrap());
        redzone::cli::RunConfig::from_json(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
}
