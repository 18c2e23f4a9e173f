//! The velocity field `m u_μ = −iħ ∂_μψ/ψ − qA_μ` and the residuals built on it.
//!
//! Scalar residuals are divided by ψ, and the Newton residual by the Euclidean
//! length of `u`, so fixed tolerances apply to unnormalized fixtures.

use crate::context::Context;
use crate::error::{Error, Result};
use crate::fields::{antisymmetric_part, field_strength, lorenz_gauge_residual, PotentialField};
use crate::four::{contract, Event, FourVector, Matrix4, C64, I};
use crate::jet::{central_first, field_jet, require_nonzero, DerivativeMethod, Jet};
use crate::wavefunctions::ScalarWave;

/// `|∂_μ A_μ|` above this marks a potential as outside Lorenz gauge.
pub const LORENZ_TOLERANCE: f64 = 1e-10;

/// Everything the residuals need at one event.
#[derive(Debug, Clone, Copy)]
struct Local {
    jet: Jet,
    dlog: FourVector,
    a: FourVector,
    u: FourVector,
}

fn local(psi: &dyn ScalarWave, a: &PotentialField, e: &Event, ctx: &Context) -> Result<Local> {
    let k = &ctx.constants;
    let jet = field_jet(psi, e, ctx.method)?;
    require_nonzero(jet.value, e, ctx.psi_floor)?;
    let dlog = jet.grad4(k.c).scale(1.0 / jet.value);
    let av = a.value(e)?;
    let u = (dlog.scale(-I * k.hbar) - av * k.q) * (1.0 / k.m);
    Ok(Local { jet, dlog, a: av, u })
}

/// `u_μ = (−iħ ∂_μψ/ψ − qA_μ)/m`.
pub fn extract_u(psi: &dyn ScalarWave, a: &PotentialField, e: &Event, ctx: &Context) -> Result<FourVector> {
    Ok(local(psi, a, e, ctx)?.u)
}

/// Differentiates a four-vector evaluator along every axis; row μ holds `∂_μ`.
fn nested_gradient(
    f: &dyn Fn(&Event) -> Result<FourVector>,
    e: &Event,
    h: f64,
    c: f64,
) -> Result<Matrix4> {
    let mut g = Matrix4::ZERO;
    for axis in 0..4 {
        let mut row = central_first(f, e, axis, h)?;
        if axis == 3 {
            row = row.scale(1.0 / (I * c));
        }
        g.0[axis] = row.0;
    }
    Ok(g)
}

/// `∂_ν u_μ` (row ν, column μ) and the gradient of A.
///
/// Analytic mode uses second derivatives of ψ; central mode differentiates
/// the extraction evaluator itself.
fn velocity_gradient(
    psi: &dyn ScalarWave,
    a: &PotentialField,
    e: &Event,
    ctx: &Context,
    loc: &Local,
) -> Result<(Matrix4, Matrix4)> {
    let k = &ctx.constants;
    let da = a.gradient_with(e, ctx.method, k.c)?;
    let du = match ctx.method {
        DerivativeMethod::Analytic => {
            let h4 = loc.jet.hess4(k.c);
            Matrix4::from_fn(|nu, mu| {
                let d_dlog = h4[(nu, mu)] / loc.jet.value - loc.dlog[nu] * loc.dlog[mu];
                (-I * k.hbar * d_dlog - da[(nu, mu)] * k.q) / k.m
            })
        }
        DerivativeMethod::Central { h } => {
            nested_gradient(&|p| extract_u(psi, a, p, ctx), e, h, k.c)?
        }
    };
    Ok((du, da))
}

/// `u_μ u_μ + c²`; zero on the mass shell.
pub fn mass_shell_residual(psi: &dyn ScalarWave, a: &PotentialField, e: &Event, ctx: &Context) -> Result<C64> {
    let u = extract_u(psi, a, e, ctx)?;
    Ok(contract(&u, &u) + ctx.constants.c * ctx.constants.c)
}

/// `(u_ν ∂_ν u_μ − (q/m) F_μν u_ν) / |u|`.
pub fn newton_residual(psi: &dyn ScalarWave, a: &PotentialField, e: &Event, ctx: &Context) -> Result<FourVector> {
    let loc = local(psi, a, e, ctx)?;
    let (du, da) = velocity_gradient(psi, a, e, ctx, &loc)?;
    Ok(newton_from(&loc, &du, &da, ctx))
}

fn newton_from(loc: &Local, du: &Matrix4, da: &Matrix4, ctx: &Context) -> FourVector {
    let k = &ctx.constants;
    let f = antisymmetric_part(da);
    let u = loc.u;
    let convective = FourVector(std::array::from_fn(|mu| (0..4).map(|nu| u[nu] * du[(nu, mu)]).sum()));
    let lorentz = f.contract_right(&u) * (k.q / k.m);
    normalize_by_speed(convective - lorentz, &u)
}

fn normalize_by_speed(v: FourVector, u: &FourVector) -> FourVector {
    let n = u.norm();
    if n > 0.0 {
        v * (1.0 / n)
    } else {
        v
    }
}

/// Newton residual minus `½ ∂_μ(u_ν u_ν)`, both divided by `|u|`.
///
/// The gradient of `u·u` is taken by central differences of the extraction,
/// independently of the residual. The difference equals `−u_ν K_μν / (m|u|)`,
/// so it vanishes wherever the curl does, on or off the mass shell.
pub fn newton_chain_gap(psi: &dyn ScalarWave, a: &PotentialField, e: &Event, ctx: &Context) -> Result<FourVector> {
    let loc = local(psi, a, e, ctx)?;
    let (du, da) = velocity_gradient(psi, a, e, ctx, &loc)?;
    let newton = newton_from(&loc, &du, &da, ctx);
    let h = ctx.method.step_or_default();
    let uu = |p: &Event| -> Result<C64> {
        let u = extract_u(psi, a, p, ctx)?;
        Ok(contract(&u, &u))
    };
    let mut half_grad = FourVector::ZERO;
    for axis in 0..4 {
        let mut d = central_first(&uu, e, axis, h)?;
        if axis == 3 {
            d /= I * ctx.constants.c;
        }
        half_grad[axis] = 0.5 * d;
    }
    Ok(newton - normalize_by_speed(half_grad, &loc.u))
}

/// `K_μν = ∂_μ(m u_ν + q A_ν) − ∂_ν(m u_μ + q A_μ)`.
pub fn curl_k(psi: &dyn ScalarWave, a: &PotentialField, e: &Event, ctx: &Context) -> Result<Matrix4> {
    let loc = local(psi, a, e, ctx)?;
    let (du, da) = velocity_gradient(psi, a, e, ctx, &loc)?;
    Ok(curl_from(&du, &da, ctx))
}

fn curl_from(du: &Matrix4, da: &Matrix4, ctx: &Context) -> Matrix4 {
    let k = &ctx.constants;
    let canonical = Matrix4::from_fn(|mu, nu| du[(mu, nu)] * k.m + da[(mu, nu)] * k.q);
    antisymmetric_part(&canonical)
}

/// `u_ν K_μν`.
pub fn velocity_dot_curl(psi: &dyn ScalarWave, a: &PotentialField, e: &Event, ctx: &Context) -> Result<FourVector> {
    let loc = local(psi, a, e, ctx)?;
    let (du, da) = velocity_gradient(psi, a, e, ctx, &loc)?;
    Ok(curl_from(&du, &da, ctx).contract_right(&loc.u))
}

/// Two evaluations of `∂_μ(m u_μ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Divergence {
    /// `−iħ ∂_μ∂_μ ln ψ − q ∂_μ A_μ` from the jet of ψ.
    pub value: C64,
    /// Central differences of the extracted field `m u_μ`.
    pub nested: C64,
    /// `−iħ (∂∂ψ/ψ − ∂ψ/ψ · ∂ψ/ψ)`, which equals `value` under Lorenz gauge.
    pub log_laplacian: C64,
    pub lorenz: C64,
    pub gauge_violation: bool,
}

impl Divergence {
    /// `|nested − log_laplacian|`; meaningful when the gauge is not violated.
    pub fn identity_gap(&self) -> f64 {
        (self.nested - self.log_laplacian).norm()
    }
}

pub fn divergence_mu(psi: &dyn ScalarWave, a: &PotentialField, e: &Event, ctx: &Context) -> Result<Divergence> {
    let k = &ctx.constants;
    let loc = local(psi, a, e, ctx)?;
    let lap = loc.jet.laplace4(k.c) / loc.jet.value;
    let log_laplacian = -I * k.hbar * (lap - contract(&loc.dlog, &loc.dlog));
    let lorenz = lorenz_gauge_residual(a, e, ctx.method, k.c)?;
    let h = ctx.method.step_or_default();
    let mut nested = C64::new(0.0, 0.0);
    for axis in 0..4 {
        let component = |p: &Event| -> Result<C64> { Ok(extract_u(psi, a, p, ctx)?[axis] * k.m) };
        let mut d = central_first(&component, e, axis, h)?;
        if axis == 3 {
            d /= I * k.c;
        }
        nested += d;
    }
    Ok(Divergence {
        value: log_laplacian - lorenz * k.q,
        nested,
        log_laplacian,
        lorenz,
        gauge_violation: lorenz.norm() >= LORENZ_TOLERANCE,
    })
}

/// A scalar residual, divided by ψ unless ψ was below the floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarResidual {
    pub value: C64,
    pub normalized: bool,
}

/// `(−iħ∂ − qA)²ψ` from a jet, without dividing by ψ.
fn kinetic_square(jet: &Jet, a: &FourVector, div_a: C64, ctx: &Context) -> C64 {
    let k = &ctx.constants;
    let grad = jet.grad4(k.c);
    -k.hbar * k.hbar * jet.laplace4(k.c)
        + I * k.hbar * k.q * (div_a * jet.value + 2.0 * contract(a, &grad))
        + k.q * k.q * contract(a, a) * jet.value
}

/// `[(−iħ∂ − qA)²ψ + m²c²ψ]/ψ`.
///
/// Where `|ψ|` is at or below the floor the unnormalized value is returned
/// with `normalized = false`.
pub fn kg_residual(psi: &dyn ScalarWave, a: &PotentialField, e: &Event, ctx: &Context) -> Result<ScalarResidual> {
    let k = &ctx.constants;
    let jet = field_jet(psi, e, ctx.method)?;
    let av = a.value(e)?;
    let div_a = lorenz_gauge_residual(a, e, ctx.method, k.c)?;
    let raw = kinetic_square(&jet, &av, div_a, ctx) + k.m * k.m * k.c * k.c * jet.value;
    if jet.value.norm() > ctx.psi_floor {
        Ok(ScalarResidual {
            value: raw / jet.value,
            normalized: true,
        })
    } else {
        Ok(ScalarResidual {
            value: raw,
            normalized: false,
        })
    }
}

/// `[(−iħ∂ − qA)²ψ + m²c²ψ + ħ²ψ ∂_μ∂_μ ln ψ]/ψ`.
pub fn nonlinear_wave_residual(psi: &dyn ScalarWave, a: &PotentialField, e: &Event, ctx: &Context) -> Result<C64> {
    let k = &ctx.constants;
    let loc = local(psi, a, e, ctx)?;
    let div_a = lorenz_gauge_residual(a, e, ctx.method, k.c)?;
    let kg = kinetic_square(&loc.jet, &loc.a, div_a, ctx) / loc.jet.value + k.m * k.m * k.c * k.c;
    let log_lap = loc.jet.laplace4(k.c) / loc.jet.value - contract(&loc.dlog, &loc.dlog);
    Ok(kg + k.hbar * k.hbar * log_lap)
}

/// `(−iħ∂ − qA)²ψ/ψ − [m² u_μu_μ − iħ ∂_μ(m u_μ)]`, which vanishes identically.
pub fn operator_decomposition_gap(psi: &dyn ScalarWave, a: &PotentialField, e: &Event, ctx: &Context) -> Result<C64> {
    let k = &ctx.constants;
    let loc = local(psi, a, e, ctx)?;
    let div_a = lorenz_gauge_residual(a, e, ctx.method, k.c)?;
    let lhs = kinetic_square(&loc.jet, &loc.a, div_a, ctx) / loc.jet.value;
    let div = divergence_mu(psi, a, e, ctx)?;
    let rhs = k.m * k.m * contract(&loc.u, &loc.u) - I * k.hbar * div.nested;
    Ok(lhs - rhs)
}

/// All residuals at one event; failures are recorded per entry.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualSample {
    pub event: Event,
    pub velocity: Result<FourVector>,
    pub mass_shell: Result<C64>,
    pub newton: Result<FourVector>,
    pub newton_chain_gap: Result<FourVector>,
    pub curl_k: Result<Matrix4>,
    pub velocity_dot_curl: Result<FourVector>,
    pub divergence: Result<Divergence>,
    pub kg: Result<ScalarResidual>,
    pub nonlinear: Result<C64>,
    pub decomposition_gap: Result<C64>,
    pub field_strength: Result<Matrix4>,
}

impl ResidualSample {
    /// True when any entry failed (near-zero ψ, singular potential, ...).
    pub fn singular(&self) -> bool {
        self.errors().next().is_some()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Error> {
        [
            self.velocity.as_ref().err(),
            self.mass_shell.as_ref().err(),
            self.newton.as_ref().err(),
            self.newton_chain_gap.as_ref().err(),
            self.curl_k.as_ref().err(),
            self.velocity_dot_curl.as_ref().err(),
            self.divergence.as_ref().err(),
            self.kg.as_ref().err(),
            self.nonlinear.as_ref().err(),
            self.decomposition_gap.as_ref().err(),
            self.field_strength.as_ref().err(),
        ]
        .into_iter()
        .flatten()
    }

    /// `|nonlinear − m²·mass_shell|`.
    pub fn nonlinear_mass_shell_gap(&self, m: f64) -> Option<f64> {
        match (&self.nonlinear, &self.mass_shell) {
            (Ok(n), Ok(s)) => Some((n - m * m * s).norm()),
            _ => None,
        }
    }
}

/// Evaluates every residual at `e`. Never fails; errors land in the entries.
pub fn diagnose_point(psi: &dyn ScalarWave, a: &PotentialField, e: &Event, ctx: &Context) -> ResidualSample {
    ResidualSample {
        event: *e,
        velocity: extract_u(psi, a, e, ctx),
        mass_shell: mass_shell_residual(psi, a, e, ctx),
        newton: newton_residual(psi, a, e, ctx),
        newton_chain_gap: newton_chain_gap(psi, a, e, ctx),
        curl_k: curl_k(psi, a, e, ctx),
        velocity_dot_curl: velocity_dot_curl(psi, a, e, ctx),
        divergence: divergence_mu(psi, a, e, ctx),
        kg: kg_residual(psi, a, e, ctx),
        nonlinear: nonlinear_wave_residual(psi, a, e, ctx),
        decomposition_gap: operator_decomposition_gap(psi, a, e, ctx),
        field_strength: field_strength(a, e, ctx.method, ctx.constants.c),
    }
}
