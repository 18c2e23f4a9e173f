//! Acceptance criteria, one line per criterion. Exits nonzero if any fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use velfield::dirac::{clifford_residual, gamma_matrices, Representation};
use velfield_cli::config::{Overrides, ScenarioConfig, Settings};
use velfield_cli::{run_scenario, ResidualReport};

type Outcome = Result<String, String>;

fn run(json: &str) -> Result<ResidualReport, String> {
    let cfg = ScenarioConfig::from_json(json).map_err(|e| e.to_string())?;
    let settings = Settings::resolve(&cfg, &Overrides::default()).map_err(|e| e.to_string())?;
    let report = run_scenario(&settings).map_err(|e| e.to_string())?;
    report.validate().map_err(|e| e.to_string())?;
    Ok(report)
}

/// Largest magnitude of `check`, required to be below `tol` with no skipped points.
fn bound(report: &ResidualReport, check: &str, tol: f64) -> Result<f64, String> {
    let c = report
        .check(check)
        .ok_or_else(|| format!("{}: no check `{check}`", report.scenario.scenario))?;
    if c.points == 0 || c.skipped > 0 {
        return Err(format!("{check}: {} points, {} skipped", c.points, c.skipped));
    }
    if c.linf < tol {
        Ok(c.linf)
    } else {
        Err(format!("{check}: linf {:.3e} ≥ {tol:e}", c.linf))
    }
}

fn ball(seed: u64) -> String {
    format!(r#"{{"kind": "random-ball", "center": [0, 0, 0, 0], "radius": 3, "count": 100, "seed": {seed}}}"#)
}

fn clifford() -> Outcome {
    let exact = clifford_residual(&gamma_matrices(Representation::DiracStandard));
    if exact != 0.0 {
        return Err(format!("clifford residual {exact:e}"));
    }
    let r = run(r#"{"scenario": "clifford", "seed": 101}"#)?;
    let sq = bound(&r, "slash_square", 1e-12)?;
    Ok(format!("anticommutator residual 0; (γ·P)² over 100 P: {sq:.1e}"))
}

fn free_plane_waves() -> Outcome {
    let checks = ["kg", "mass_shell", "newton", "curl_k", "divergence", "nonlinear"];
    let mut worst = [0.0f64; 2];
    for (i, p) in ["[0, 0, 0]", "[1, 0, 0]", "[0.3, -0.2, 0.1]"].iter().enumerate() {
        for (slot, (derivative, tol)) in [(r#"{"method": "analytic"}"#, 1e-12), (r#"{"method": "numeric", "h": 1e-3}"#, 1e-6)]
            .into_iter()
            .enumerate()
        {
            let r = run(&format!(
                r#"{{"scenario": "plane-wave", "fixture": {{"momentum": {p}}}, "derivative": {derivative}, "cloud": {}}}"#,
                ball(200 + i as u64)
            ))?;
            for c in checks {
                worst[slot] = worst[slot].max(bound(&r, c, tol).map_err(|e| format!("p = {p}: {e}"))?);
            }
        }
    }
    Ok(format!("analytic max {:.1e} (< 1e-12), numeric max {:.1e} (< 1e-6)", worst[0], worst[1]))
}

fn kg_coulomb() -> Outcome {
    let r = run(r#"{"scenario": "kg-coulomb-1s", "fixture": {"z_alpha": 0.4},
        "cloud": {"kind": "ray", "r_min": 0.5, "r_max": 5, "count": 50, "t": 0}}"#)?;
    let kg = bound(&r, "kg", 1e-8)?;
    let div = bound(&r, "divergence_identity", 1e-8)?;
    let nl = bound(&r, "nonlinear_vs_mass_shell", 1e-8)?;
    let curl = bound(&r, "curl_k", 1e-8)?;
    let uk = bound(&r, "velocity_dot_curl", 1e-10)?;
    Ok(format!(
        "kg {kg:.1e}, divergence identity {div:.1e}, nonlinear−m²·shell {nl:.1e}, curl K {curl:.1e}, u·K {uk:.1e}"
    ))
}

fn dirac_plane_waves() -> Outcome {
    let mut worst = 0.0f64;
    let mut consistency = 0.0f64;
    let mut squared = 0.0f64;
    for (i, p) in ["[0, 0, 0]", "[1, 0, 0]", "[0.3, -0.2, 0.1]"].iter().enumerate() {
        for spin in ["up", "down"] {
            let r = run(&format!(
                r#"{{"scenario": "dirac-plane-wave", "fixture": {{"momentum": {p}, "spin": "{spin}"}}, "cloud": {}, "seed": {}}}"#,
                ball(300 + i as u64),
                400 + i
            ))?;
            for c in ["dirac_gamma", "dirac_alphabeta", "form_equivalence"] {
                worst = worst.max(bound(&r, c, 1e-12)?);
            }
            squared = squared.max(bound(&r, "squared_operator", 1e-8)?);
            if i > 0 {
                consistency = consistency.max(bound(&r, "spinor_velocity_consistency", 1e-12)?);
            }
        }
    }
    Ok(format!(
        "residuals and form equivalence {worst:.1e}, component velocities {consistency:.1e}, squared operator {squared:.1e}"
    ))
}

fn dirac_coulomb() -> Outcome {
    let r = run(r#"{"scenario": "dirac-coulomb-1s", "fixture": {"z_alpha": 0.4},
        "derivative": {"method": "numeric", "h": 1e-3},
        "cloud": {"kind": "ray", "r_min": 0.5, "r_max": 5, "count": 50, "t": 0}}"#)?;
    let res = bound(&r, "dirac_gamma", 1e-6)?;
    let scan = bound(&r, "energy_scan", 1e-6)?;
    Ok(format!("numeric residual {res:.1e}; scan minimum off √0.84 mc² by {scan:.1e}"))
}

fn gauge_orbit() -> Outcome {
    let r = run(r#"{"scenario": "gauge-orbit", "seed": 606}"#)?;
    let u = bound(&r, "velocity_invariance", 1e-9)?;
    let d = bound(&r, "dirac_residual_invariance", 1e-10)?;
    Ok(format!("10 gauges × 100 events: Δu {u:.1e}, Δ|R_Dirac| {d:.1e}"))
}

fn action() -> Outcome {
    let r = run(r#"{"scenario": "action-path"}"#)?;
    let dphi = bound(&r, "path_independence", 1e-8)?;
    let rec = bound(&r, "plane_wave_reconstruction", 1e-12)?;
    Ok(format!("|ΔΦ| {dphi:.1e}; plane-wave reconstruction {rec:.1e}"))
}

fn worldlines() -> Outcome {
    let r = run(r#"{"scenario": "worldline-pierce"}"#)?;
    if r.check("circle_count").map(|c| c.linf) != Some(0.0) {
        return Err("circle cut does not give exactly two points".into());
    }
    let pos = bound(&r, "circle_positions", 1e-9)?;
    let lines = r.check("boosted_line_count").ok_or("missing boosted_line_count")?;
    if lines.linf != 0.0 || lines.points < 20 {
        return Err("a boosted timelike line does not cross a slice exactly once".into());
    }
    let shell = bound(&r, "timelike_mass_shell", 1e-10)?;
    Ok(format!("circle points at ±√0.75 within {pos:.1e}; single crossings under 20 boosts; u·u + c² {shell:.1e}"))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_velfield"))
}

fn exit_code(args: &[&str], config: Option<(&Path, &str)>, out: &Path) -> Result<i32, String> {
    let mut cmd = bin();
    cmd.arg("run").args(args);
    if let Some((path, body)) = config {
        std::fs::write(path, body).map_err(|e| e.to_string())?;
        cmd.arg("--config").arg(path);
    }
    let status = cmd.arg("--out").arg(out).output().map_err(|e| e.to_string())?.status;
    status.code().ok_or_else(|| "terminated by signal".to_string())
}

fn negative_controls(dir: &Path) -> Outcome {
    let cfg = dir.join("neg.json");
    let out = dir.join("neg-report.json");
    let cases = [
        ("detuned KG energy", r#"{"scenario": "kg-coulomb-1s", "fixture": {"energy_scale": 1.01}}"#, "kg"),
        ("γ_1 × 1.01 (Clifford)", r#"{"scenario": "clifford", "fixture": {"gamma1_scale": 1.01}}"#, "clifford"),
        ("γ_1 × 1.01 (Dirac)", r#"{"scenario": "dirac-plane-wave", "fixture": {"gamma1_scale": 1.01}}"#, "dirac_gamma"),
    ];
    for (label, body, check) in cases {
        let code = exit_code(&["--no-timestamp"], Some((&cfg, body)), &out)?;
        if code != 1 {
            return Err(format!("{label}: exit {code}, expected 1"));
        }
        let report = ResidualReport::from_json(&std::fs::read_to_string(&out).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        if report.check(check).map(|c| c.pass) != Some(false) {
            return Err(format!("{label}: check `{check}` did not fail"));
        }
    }
    Ok("detuned KG and scaled γ_1 each exit 1 with the expected check failing".into())
}

fn determinism(dir: &Path) -> Outcome {
    let cfg = dir.join("det.json");
    let out = dir.join("det-report.json");
    let body = r#"{"scenario": "plane-wave", "cloud": {"kind": "random-ball", "center": [0, 0, 0, 0], "radius": 2, "count": 40, "seed": 1}}"#;
    let mut bytes = Vec::new();
    for _ in 0..2 {
        let code = exit_code(&["--no-timestamp", "--seed", "77"], Some((&cfg, body)), &out)?;
        if code != 0 {
            return Err(format!("plane-wave exit {code}"));
        }
        bytes.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    if bytes[0] != bytes[1] {
        return Err("reports differ between identical runs".into());
    }
    let fail = exit_code(&[], Some((&cfg, r#"{"scenario": "kg-coulomb-1s", "fixture": {"energy_scale": 1.01}}"#)), &out)?;
    let missing = dir.join("never-written.json");
    let bad = exit_code(&[], Some((&cfg, r#"{"fixture": {"z_alpha": 0.4}}"#)), &missing)?;
    if fail != 1 || bad != 2 || missing.exists() {
        return Err(format!("exit codes: detuned {fail} (want 1), malformed {bad} (want 2), report written: {}", missing.exists()));
    }
    Ok(format!("byte-identical reports ({} bytes); exit codes 0/1/2 as specified", bytes[0].len()))
}

fn main() -> ExitCode {
    let dir = match tempfile::tempdir() {
        Ok(d) => d,
        Err(e) => {
            eprintln!("cannot create a scratch directory: {e}");
            return ExitCode::FAILURE;
        }
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("Clifford suite", Box::new(clifford)),
        ("free plane waves", Box::new(free_plane_waves)),
        ("KG–Coulomb 1s", Box::new(kg_coulomb)),
        ("Dirac plane waves", Box::new(dirac_plane_waves)),
        ("Dirac–Coulomb 1s", Box::new(dirac_coulomb)),
        ("gauge orbit", Box::new(gauge_orbit)),
        ("action integral", Box::new(action)),
        ("worldlines", Box::new(worldlines)),
        ("negative controls", Box::new(|| negative_controls(dir.path()))),
        ("CLI determinism and exit codes", Box::new(|| determinism(dir.path()))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
