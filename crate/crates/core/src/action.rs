//! Line integrals of the canonical momentum and phase reconstruction.

use crate::context::Context;
use crate::error::{Error, Result};
use crate::fields::PotentialField;
use crate::four::{Event, C64, I};
use crate::velocity::extract_u;
use crate::wavefunctions::ScalarWave;

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule
}

/// Adaptive quadrature of a complex integrand over `[a, b]`.
///
/// Each interval is accepted when the rule on it and the sum over its two
/// halves agree within `tol`; otherwise both halves are refined, down to
/// `max_depth` bisections.
pub struct AdaptiveGaussLegendre {
    rule: Vec<(f64, f64)>,
    pub tol: f64,
    pub max_depth: u32,
}

impl Default for AdaptiveGaussLegendre {
    fn default() -> Self {
        Self::new(10, 1e-10, 20)
    }
}

impl AdaptiveGaussLegendre {
    pub fn new(order: usize, tol: f64, max_depth: u32) -> Self {
        Self {
            rule: gauss_legendre(order),
            tol,
            max_depth,
        }
    }

    fn fixed(&self, f: &mut dyn FnMut(f64) -> Result<C64>, a: f64, b: f64) -> Result<C64> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = C64::new(0.0, 0.0);
        for &(x, w) in &self.rule {
            acc += f(mid + half * x)? * w;
        }
        Ok(acc * half)
    }

    /// Returns `None` when the depth limit is hit.
    pub fn integrate(&self, f: &mut dyn FnMut(f64) -> Result<C64>, a: f64, b: f64) -> Result<Option<C64>> {
        let whole = self.fixed(f, a, b)?;
        self.refine(f, a, b, whole, 0)
    }

    fn refine(
        &self,
        f: &mut dyn FnMut(f64) -> Result<C64>,
        a: f64,
        b: f64,
        whole: C64,
        depth: u32,
    ) -> Result<Option<C64>> {
        let mid = 0.5 * (a + b);
        let left = self.fixed(f, a, mid)?;
        let right = self.fixed(f, mid, b)?;
        if (left + right - whole).norm() < self.tol {
            return Ok(Some(left + right));
        }
        if depth >= self.max_depth {
            return Ok(None);
        }
        let Some(l) = self.refine(f, a, mid, left, depth + 1)? else {
            return Ok(None);
        };
        let Some(r) = self.refine(f, mid, b, right, depth + 1)? else {
            return Ok(None);
        };
        Ok(Some(l + r))
    }
}

/// Result of integrating `(m u_μ + q A_μ) dx_μ` along a polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionResult {
    /// `Φ = ∫ (m u_μ + q A_μ) dx_μ`, with `dx_4 = ic dt`.
    pub phi: C64,
    /// Offset fixed by `ψ(start) = exp(iθ/ħ)`.
    pub theta: C64,
    /// `exp(i(Φ + θ)/ħ)`.
    pub reconstructed: C64,
    /// Fixture value at the path end.
    pub endpoint_value: C64,
    /// `|reconstructed − endpoint_value| / |endpoint_value|`.
    pub reconstruction_error: f64,
    pub path: Vec<Event>,
}

/// Minimum spatial distance from the segment `[p, q]` to `point`, over segments
/// that stay in one time slice or cross it.
fn segment_distance(p: &Event, q: &Event, point: [f64; 3]) -> f64 {
    let a = [p.x1 - point[0], p.x2 - point[1], p.x3 - point[2]];
    let d = [q.x1 - p.x1, q.x2 - p.x2, q.x3 - p.x3];
    let dd: f64 = d.iter().map(|v| v * v).sum();
    let s = if dd == 0.0 {
        0.0
    } else {
        (-(a[0] * d[0] + a[1] * d[1] + a[2] * d[2]) / dd).clamp(0.0, 1.0)
    };
    (0..3).map(|k| (a[k] + s * d[k]).powi(2)).sum::<f64>().sqrt()
}

/// Distance below which a path is treated as running through a singular point.
pub const SINGULAR_CLEARANCE: f64 = 1e-9;

/// Integrates the canonical momentum along `path` and reconstructs ψ at its end.
pub fn action_integral(
    psi: &dyn ScalarWave,
    a: &PotentialField,
    path: &[Event],
    ctx: &Context,
) -> Result<ActionResult> {
    action_integral_with(psi, a, path, ctx, &AdaptiveGaussLegendre::default())
}

pub fn action_integral_with(
    psi: &dyn ScalarWave,
    a: &PotentialField,
    path: &[Event],
    ctx: &Context,
    quad: &AdaptiveGaussLegendre,
) -> Result<ActionResult> {
    let k = ctx.constants;
    if path.len() < 2 {
        return Err(Error::InvalidParameter("a path needs at least two events".into()));
    }
    let mut singular = a.singular_points();
    singular.extend(psi.singular_points());
    for pair in path.windows(2) {
        for point in &singular {
            if segment_distance(&pair[0], &pair[1], *point) < SINGULAR_CLEARANCE {
                return Err(Error::SingularPath { event: pair[0] });
            }
        }
    }

    let mut phi = C64::new(0.0, 0.0);
    for (segment, pair) in path.windows(2).enumerate() {
        let (start, end) = (pair[0], pair[1]);
        let dx = [
            C64::from(end.x1 - start.x1),
            C64::from(end.x2 - start.x2),
            C64::from(end.x3 - start.x3),
            I * k.c * (end.t - start.t),
        ];
        let mut integrand = |s: f64| -> Result<C64> {
            let e = start.lerp(&end, s);
            let u = extract_u(psi, a, &e, ctx)?;
            let av = a.value(&e)?;
            Ok((0..4).map(|mu| (u[mu] * k.m + av[mu] * k.q) * dx[mu]).sum())
        };
        phi += quad
            .integrate(&mut integrand, 0.0, 1.0)?
            .ok_or(Error::QuadratureNonConvergence {
                segment,
                max_depth: quad.max_depth,
            })?;
    }

    let start_value = psi.value(&path[0])?;
    let endpoint_value = psi.value(path.last().expect("path has two events"))?;
    let theta = -I * k.hbar * start_value.ln();
    let reconstructed = (I * (phi + theta) / k.hbar).exp();
    let reconstruction_error = (reconstructed - endpoint_value).norm() / endpoint_value.norm();
    Ok(ActionResult {
        phi,
        theta,
        reconstructed,
        endpoint_value,
        reconstruction_error,
        path: path.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::PhysicalConstants;
    use crate::wavefunctions::{kg_coulomb_1s, plane_wave};

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let rule = gauss_legendre(10);
        let w: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((w - 2.0).abs() < 1e-14);
        // Exact through degree 19.
        let x18: f64 = rule.iter().map(|(x, w)| w * x.powi(18)).sum();
        assert!((x18 - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_steep_integrand() {
        let quad = AdaptiveGaussLegendre::default();
        let mut f = |x: f64| Ok(C64::from(1.0 / (x + 1e-3)));
        let v = quad.integrate(&mut f, 0.0, 1.0).unwrap().unwrap();
        assert!((v.re - (1.001f64 / 1e-3).ln()).abs() < 1e-9);
    }

    #[test]
    fn depth_limit_reports_nonconvergence() {
        let quad = AdaptiveGaussLegendre::new(2, 1e-14, 2);
        let mut f = |x: f64| Ok(C64::from((50.0 * x).sin()));
        assert!(quad.integrate(&mut f, 0.0, 10.0).unwrap().is_none());
    }

    #[test]
    fn plane_wave_straight_path() {
        let consts = PhysicalConstants::default();
        let w = plane_wave([0.7, 0.0, 0.0], &consts).unwrap();
        let path = [Event::ORIGIN, Event::new(1.0, 0.0, 0.0, 0.0)];
        let r = action_integral(&w, &PotentialField::Zero, &path, &Context::default()).unwrap();
        assert!((r.phi - C64::from(0.7)).norm() < 1e-12);
        assert!(r.reconstruction_error < 1e-12);
    }

    #[test]
    fn path_through_nucleus_rejected() {
        let consts = PhysicalConstants::default();
        let w = kg_coulomb_1s(0.4, &consts).unwrap();
        let a = PotentialField::coulomb(0.4, &consts).unwrap();
        let path = [Event::new(-1.0, 0.0, 0.0, 0.0), Event::new(1.0, 0.0, 0.0, 0.0)];
        assert!(matches!(
            action_integral(&w, &a, &path, &Context::default()),
            Err(Error::SingularPath { .. })
        ));
        assert!(action_integral(&w, &a, &path[..1], &Context::default()).is_err());
    }

    #[test]
    fn kg_coulomb_closed_loop() {
        let consts = PhysicalConstants::default();
        let w = kg_coulomb_1s(0.4, &consts).unwrap();
        let a = PotentialField::coulomb(0.4, &consts).unwrap();
        let loop_path = [
            Event::new(1.0, 0.5, 0.0, 0.0),
            Event::new(3.0, 0.5, 0.0, 0.0),
            Event::new(3.0, 2.0, 0.0, 0.5),
            Event::new(1.0, 2.0, 0.0, 0.5),
            Event::new(1.0, 0.5, 0.0, 0.0),
        ];
        let r = action_integral(&w, &a, &loop_path, &Context::default()).unwrap();
        assert!(r.phi.norm() < 1e-8, "loop action {}", r.phi);
    }
}
