use std::process::Command;

use velfield_cli::config::{Cloud, Overrides, ScenarioConfig, Settings};
use velfield_cli::report::{ResidualReport, CSV_HEADER};
use velfield_cli::{list_scenarios, run_scenario, Scenario};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_velfield"))
}

fn settings(json: &str) -> Settings {
    Settings::resolve(&ScenarioConfig::from_json(json).unwrap(), &Overrides::default()).unwrap()
}

#[test]
fn list_is_sorted_and_complete() {
    let names = list_scenarios();
    assert_eq!(names.len(), 8);
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for n in &names {
        let s: Scenario = n.parse().unwrap();
        assert_eq!(s.name(), *n);
        assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{n}\""));
    }
    let out = bin().arg("list").output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().collect::<Vec<_>>(), names);
}

#[test]
fn every_listed_scenario_runs_with_defaults() {
    for name in list_scenarios() {
        if name == "gauge-orbit" {
            continue; // covered below with a smaller cloud
        }
        let s = Settings::resolve(&ScenarioConfig::for_scenario(name.parse().unwrap()), &Overrides::default()).unwrap();
        let report = run_scenario(&s).unwrap();
        report.validate().unwrap();
        assert!(report.all_pass, "{name}: {:?}", report.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }
}

#[test]
fn gauge_orbit_on_small_cloud() {
    let s = settings(
        r#"{"scenario": "gauge-orbit", "cloud": {"kind": "random-ball", "center": [2, 0, 0, 0], "radius": 1, "count": 10, "seed": 5}}"#,
    );
    let report = run_scenario(&s).unwrap();
    assert!(report.all_pass);
    assert_eq!(report.check("round_trip").unwrap().points, 100);
}

#[test]
fn json_round_trip_and_csv_shape() {
    let s = settings(r#"{"scenario": "plane-wave", "cloud": {"kind": "random-ball", "center": [0,0,0,0], "radius": 2, "count": 7, "seed": 3}}"#);
    let report = run_scenario(&s).unwrap();
    let back = ResidualReport::from_json(&report.to_json()).unwrap();
    assert_eq!(back, report);
    let csv = report.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
    assert_eq!(lines.count(), 7 * report.checks.len());
}

#[test]
fn schema_violations_are_caught() {
    let s = settings(r#"{"scenario": "clifford"}"#);
    let good = run_scenario(&s).unwrap();
    good.validate().unwrap();
    let mut r = good.clone();
    r.schema_version = 99;
    assert!(r.validate().is_err());
    let mut r = good.clone();
    r.rows.pop();
    assert!(r.validate().is_err());
    let mut r = good.clone();
    r.all_pass = !r.all_pass;
    assert!(r.validate().is_err());
    let mut r = good;
    let dup = r.checks[0].clone();
    r.checks.push(dup);
    assert!(r.validate().is_err());
}

#[test]
fn config_errors() {
    let bad = [
        r#"{"fixture": {}}"#,
        r#"{"scenario": "nope"}"#,
        r#"{"scenario": "plane-wave", "colud": {}}"#,
        r#"{"scenario": "kg-coulomb-1s", "cloud": {"kind": "ray", "r_min": 0, "r_max": 5, "count": 3}}"#,
        r#"{"scenario": "plane-wave", "cloud": {"kind": "random-ball", "center": [0,0,0,0], "radius": 1, "count": 3}}"#,
        r#"{"scenario": "plane-wave", "cloud": {"kind": "ray", "r_min": 1, "r_max": 2, "count": 0}}"#,
        r#"{"scenario": "clifford", "cloud": {"kind": "ray", "r_min": 1, "r_max": 2, "count": 2}}"#,
        r#"{"scenario": "plane-wave", "derivative": {"method": "numeric", "h": -1}}"#,
        r#"{"scenario": "kg-coulomb-1s", "fixture": {"z_alpha": 0.6}}"#,
        r#"{"scenario": "plane-wave", "tolerances": {"nonexistent": 1}}"#,
        r#"{"scenario": "worldline-pierce", "fixture": {"energy_scale": 2}}"#,
    ];
    for text in bad {
        let outcome = ScenarioConfig::from_json(text)
            .and_then(|c| Settings::resolve(&c, &Overrides::default()))
            .and_then(|s| run_scenario(&s));
        assert!(outcome.is_err(), "accepted: {text}");
    }
}

#[test]
fn numeric_flag_and_overrides_resolve() {
    let cfg = ScenarioConfig::for_scenario(Scenario::PlaneWave);
    let s = Settings::resolve(&cfg, &Overrides { h: Some(2e-3), seed: Some(7), ..Overrides::default() }).unwrap();
    assert_eq!(s.derivative.h, Some(2e-3));
    assert!(matches!(s.cloud, Some(Cloud::RandomBall { seed: 7, .. })));
    let d = Settings::resolve(&ScenarioConfig::for_scenario(Scenario::DiracCoulomb1s), &Overrides::default()).unwrap();
    assert_eq!(d.derivative.h, Some(1e-3));
}

#[test]
fn tolerance_overrides_flip_verdicts() {
    let s = settings(r#"{"scenario": "kg-coulomb-1s", "tolerances": {"mass_shell": 1e-3}}"#);
    let report = run_scenario(&s).unwrap();
    let shell = report.check("mass_shell").unwrap();
    assert!(!shell.informational && !shell.pass);
}

#[test]
fn exit_codes_and_byte_stable_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    let mut runs = Vec::new();
    for _ in 0..2 {
        let st = bin().args(["run", "clifford", "--seed", "42", "--no-timestamp", "--out"]).arg(&path).status().unwrap();
        assert_eq!(st.code(), Some(0));
        runs.push(std::fs::read(&path).unwrap());
    }
    assert!(runs[0] == runs[1], "reports differ between runs");

    let cfg = dir.path().join("detuned.json");
    std::fs::write(&cfg, r#"{"scenario": "kg-coulomb-1s", "fixture": {"energy_scale": 1.01}}"#).unwrap();
    let out = dir.path().join("detuned-report.json");
    let st = bin().args(["run", "--config"]).arg(&cfg).arg("--out").arg(&out).status().unwrap();
    assert_eq!(st.code(), Some(1));
    assert!(out.exists());

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"cloud": null}"#).unwrap();
    let never = dir.path().join("never.json");
    let run = bin().args(["run", "--config"]).arg(&bad).arg("--out").arg(&never).output().unwrap();
    assert_eq!(run.status.code(), Some(2));
    assert!(!never.exists());
    assert!(!run.stderr.is_empty());

    assert_eq!(bin().args(["run", "no-such-scenario"]).status().unwrap().code(), Some(2));
    assert_eq!(bin().args(["run", "clifford", "--analytic", "--numeric"]).status().unwrap().code(), Some(2));
    let unwritable = dir.path().join("missing-dir").join("x.json");
    assert_eq!(bin().args(["run", "clifford", "--out"]).arg(&unwritable).status().unwrap().code(), Some(2));
}

#[test]
fn timestamp_is_present_by_default_and_csv_goes_to_stdout() {
    let out = bin().args(["run", "clifford"]).output().unwrap();
    let report = ResidualReport::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert!(report.timestamp.is_some() && report.duration_seconds.is_some());
    let out = bin().args(["run", "clifford", "--format", "csv", "--no-timestamp"]).output().unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("check,point,"));
    let v = bin().arg("version").output().unwrap();
    assert!(String::from_utf8(v.stdout).unwrap().contains(velfield::VERSION));
}
