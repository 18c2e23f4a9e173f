//! Browser bindings for three interactive views: worldline pierce points,
//! the Coulomb velocity field along a ray, and the Dirac energy scan.
//!
//! Each export returns a JSON string; the plain-Rust functions behind them
//! are what the tests exercise.

use std::f64::consts::TAU;

use serde::Serialize;
use velfield::dirac::{dirac_residual, gamma_matrices, DiracForm, Representation};
use velfield::fields::PotentialField;
use velfield::velocity::{divergence_mu, extract_u, kg_residual, mass_shell_residual};
use velfield::wavefunctions::{dirac_coulomb_trial, kg_coulomb_1s, Spin};
use velfield::worldline::{boost_worldline, make_worldline, pierce_points, WorldlineKind};
use velfield::{Context, Event, PhysicalConstants};
use wasm_bindgen::prelude::*;

#[derive(Debug, Serialize)]
pub struct PiercePlot {
    /// `(x1, ct)` samples of the boosted curve.
    pub curve: Vec<[f64; 2]>,
    pub points: Vec<PlotPoint>,
}

#[derive(Debug, Serialize)]
pub struct PlotPoint {
    pub x1: f64,
    pub ct: f64,
    pub class: String,
    pub tangent: bool,
}

/// Circle in the x1–x4 plane (`kind = "circle"`) or a line with speed `speed`
/// (`kind = "line"`), boosted along x1 by `boost` and cut at `ct0`. `c = 1`.
pub fn pierce_plot(kind: &str, radius: f64, speed: f64, boost: f64, ct0: f64) -> Result<PiercePlot, String> {
    let (kind, lo, hi) = match kind {
        "circle" => (WorldlineKind::CircleX1X4 { radius }, 0.0, TAU),
        "line" => (
            WorldlineKind::Line {
                origin: Event::ORIGIN,
                velocity: [speed, 0.0, 0.0],
            },
            -4.0,
            4.0,
        ),
        other => return Err(format!("unknown worldline kind `{other}`")),
    };
    let w = make_worldline(kind, lo, hi, 1.0).map_err(|e| e.to_string())?;
    let w = boost_worldline(&w, boost).map_err(|e| e.to_string())?;
    let curve = (0..=400)
        .map(|i| {
            let e = w.event(lo + (hi - lo) * i as f64 / 400.0);
            [e.x1, e.t]
        })
        .collect();
    let points = pierce_points(&w, ct0)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|p| PlotPoint {
            x1: p.event.x1,
            ct: p.event.t,
            class: p.class.to_string(),
            tangent: p.tangent,
        })
        .collect();
    Ok(PiercePlot { curve, points })
}

#[derive(Debug, Serialize)]
pub struct ProfileRow {
    pub r: f64,
    /// Imaginary parts: the radial component and the time component of u.
    pub u_radial: f64,
    pub u_time: f64,
    /// `|∂_μ(m u_μ)|` and `|u·u + c²|`, which track each other.
    pub divergence: f64,
    pub mass_shell: f64,
    pub kg: f64,
}

/// Velocity field of the scalar Coulomb ground state along the x1 axis.
pub fn coulomb_profile(z_alpha: f64, r_min: f64, r_max: f64, count: usize) -> Result<Vec<ProfileRow>, String> {
    if !(r_min > 0.0 && r_max > r_min && count >= 2) {
        return Err("need 0 < r_min < r_max and at least two points".into());
    }
    let consts = PhysicalConstants::default();
    let psi = kg_coulomb_1s(z_alpha, &consts).map_err(|e| e.to_string())?;
    let a = PotentialField::coulomb(z_alpha, &consts).map_err(|e| e.to_string())?;
    let ctx = Context::default();
    (0..count)
        .map(|i| {
            let r = r_min + (r_max - r_min) * i as f64 / (count - 1) as f64;
            let e = Event::new(r, 0.0, 0.0, 0.0);
            let u = extract_u(&psi, &a, &e, &ctx).map_err(|e| e.to_string())?;
            let div = divergence_mu(&psi, &a, &e, &ctx).map_err(|e| e.to_string())?;
            let shell = mass_shell_residual(&psi, &a, &e, &ctx).map_err(|e| e.to_string())?;
            let kg = kg_residual(&psi, &a, &e, &ctx).map_err(|e| e.to_string())?;
            Ok(ProfileRow {
                r,
                u_radial: u[0].im,
                u_time: u[3].im,
                divergence: div.value.norm(),
                mass_shell: shell.norm(),
                kg: kg.value.norm(),
            })
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct ScanCurve {
    /// `(E/mc², RMS residual)` pairs.
    pub samples: Vec<[f64; 2]>,
    pub minimum: f64,
    pub exact: f64,
}

/// RMS Dirac residual of the Coulomb trial spinor over a grid of energies.
pub fn energy_scan(z_alpha: f64, lo: f64, hi: f64, count: usize) -> Result<ScanCurve, String> {
    if !(lo > 0.0 && hi < 1.0 && lo < hi && count >= 2) {
        return Err("need 0 < lo < hi < 1 and at least two samples".into());
    }
    let consts = PhysicalConstants::default();
    let g = gamma_matrices(Representation::DiracStandard);
    let a = PotentialField::coulomb(z_alpha, &consts).map_err(|e| e.to_string())?;
    let ctx = Context::default();
    let ray: Vec<Event> = (0..20)
        .map(|i| Event::new(0.5 + 4.5 * i as f64 / 19.0, 0.0, 0.0, 0.0))
        .collect();
    let mut samples = Vec::with_capacity(count);
    for i in 0..count {
        let energy = lo + (hi - lo) * i as f64 / (count - 1) as f64;
        let psi = dirac_coulomb_trial(z_alpha, energy, Spin::Up, &consts).map_err(|e| e.to_string())?;
        let mut acc = 0.0;
        for e in &ray {
            let r = dirac_residual(&g, &psi, &a, e, &ctx, DiracForm::Gamma).map_err(|e| e.to_string())?;
            acc += r.iter().map(|z| z.norm_sqr()).sum::<f64>();
        }
        samples.push([energy, (acc / ray.len() as f64).sqrt()]);
    }
    let minimum = samples
        .iter()
        .min_by(|x, y| x[1].total_cmp(&y[1]))
        .map(|s| s[0])
        .unwrap_or(lo);
    Ok(ScanCurve {
        samples,
        minimum,
        exact: (1.0 - z_alpha * z_alpha).sqrt(),
    })
}

fn to_js<T: Serialize>(value: Result<T, String>) -> Result<String, JsError> {
    let value = value.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&value).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = piercePlot)]
pub fn pierce_plot_js(kind: &str, radius: f64, speed: f64, boost: f64, ct0: f64) -> Result<String, JsError> {
    to_js(pierce_plot(kind, radius, speed, boost, ct0))
}

#[wasm_bindgen(js_name = coulombProfile)]
pub fn coulomb_profile_js(z_alpha: f64, r_min: f64, r_max: f64, count: usize) -> Result<String, JsError> {
    to_js(coulomb_profile(z_alpha, r_min, r_max, count))
}

#[wasm_bindgen(js_name = energyScan)]
pub fn energy_scan_js(z_alpha: f64, lo: f64, hi: f64, count: usize) -> Result<String, JsError> {
    to_js(energy_scan(z_alpha, lo, hi, count))
}
