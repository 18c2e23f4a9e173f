//! Clifford algebra in the Euclidean `x4 = ict` convention and Dirac residuals.
//!
//! The generators satisfy `{γ_μ, γ_ν} = 2δ_μν I` with `γ_n = −iβα_n` and
//! `γ_4 = β`. In this convention the first-order equation reads
//! `γ_μ(−iħ∂_μ − qA_μ)Ψ − imcΨ = 0`; multiplying it by `icβ` gives the
//! Hamiltonian form `[ic(−iħ∂_4 − qA_4) + cα_n(−iħ∂_n − qA_n) + βmc²]Ψ = 0`.
//! Residuals of the two forms are therefore related by
//! `R_γ = −(i/c) β R_αβ` (see [`form_factor`]).

use std::str::FromStr;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::fields::PotentialField;
use crate::four::{contract, Event, FourVector, Matrix4, C64, I, ZERO};
use crate::jet::{field_jet, Jet};
use crate::velocity::extract_u;
use crate::wavefunctions::{dirac_coulomb_trial, Spin, SpinorWave};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// β diagonal.
    DiracStandard,
}

impl FromStr for Representation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dirac-standard" | "dirac" | "standard" => Ok(Representation::DiracStandard),
            other => Err(Error::UnknownRepresentation(other.to_string())),
        }
    }
}

/// γ_1..γ_4 together with the α_n and β they are built from.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    pub gamma: [Matrix4; 4],
    pub alpha: [Matrix4; 3],
    pub beta: Matrix4,
    pub representation: Representation,
}

fn pauli() -> [[[C64; 2]; 2]; 3] {
    let one = C64::from(1.0);
    [
        [[ZERO, one], [one, ZERO]],
        [[ZERO, -I], [I, ZERO]],
        [[one, ZERO], [ZERO, -one]],
    ]
}

pub fn gamma_matrices(rep: Representation) -> GammaSet {
    match rep {
        Representation::DiracStandard => {
            let one = C64::from(1.0);
            let beta = Matrix4::diagonal([one, one, -one, -one]);
            let sigma = pauli();
            let alpha: [Matrix4; 3] = std::array::from_fn(|n| {
                let mut m = Matrix4::ZERO;
                for r in 0..2 {
                    for c in 0..2 {
                        m[(r, c + 2)] = sigma[n][r][c];
                        m[(r + 2, c)] = sigma[n][r][c];
                    }
                }
                m
            });
            let gamma = [
                (beta * alpha[0]).scale(-I),
                (beta * alpha[1]).scale(-I),
                (beta * alpha[2]).scale(-I),
                beta,
            ];
            GammaSet {
                gamma,
                alpha,
                beta,
                representation: rep,
            }
        }
    }
}

pub fn gamma_matrices_named(name: &str) -> Result<GammaSet> {
    Ok(gamma_matrices(name.parse()?))
}

impl GammaSet {
    /// Copy with γ_μ multiplied by `factor` (negative controls).
    pub fn with_scaled_gamma(&self, mu: usize, factor: f64) -> Self {
        let mut g = self.clone();
        g.gamma[mu] = g.gamma[mu].scale(factor.into());
        g
    }

    /// `γ_μ P_μ`.
    pub fn slash(&self, p: &FourVector) -> Matrix4 {
        (0..4).fold(Matrix4::ZERO, |acc, mu| acc + self.gamma[mu].scale(p[mu]))
    }
}

/// `max_{μ,ν} max_entry |γ_μγ_ν + γ_νγ_μ − 2δ_μν I|`.
pub fn clifford_residual(g: &GammaSet) -> f64 {
    let id2 = Matrix4::identity().scale(2.0.into());
    let mut worst = 0.0f64;
    for mu in 0..4 {
        for nu in 0..4 {
            let mut anti = g.gamma[mu] * g.gamma[nu] + g.gamma[nu] * g.gamma[mu];
            if mu == nu {
                anti = anti - id2;
            }
            worst = worst.max(anti.max_abs());
        }
    }
    worst
}

/// `max_entry |(γ·P + imc)(γ·P − imc) − (P·P + m²c²) I|`.
pub fn factorization_residual(g: &GammaSet, p: &FourVector, m: f64, c: f64) -> f64 {
    let slash = g.slash(p);
    let mass = Matrix4::identity().scale(I * (m * c));
    let product = (slash + mass) * (slash - mass);
    let expected = Matrix4::identity().scale(contract(p, p) + m * m * c * c);
    (product - expected).max_abs()
}

/// `max_entry |(γ·P)² − (P·P) I|`.
pub fn slash_square_residual(g: &GammaSet, p: &FourVector) -> f64 {
    let s = g.slash(p);
    (s * s - Matrix4::identity().scale(contract(p, p))).max_abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiracForm {
    /// `γ_μ(−iħ∂_μ − qA_μ)Ψ − imcΨ`.
    Gamma,
    /// `[ic(−iħ∂_4 − qA_4) + cα_n(−iħ∂_n − qA_n) + βmc²]Ψ`.
    AlphaBeta,
}

/// The constant matrix `M` with `R_γ = M · R_αβ`: `M = −(i/c) β`.
pub fn form_factor(g: &GammaSet, c: f64) -> Matrix4 {
    g.beta.scale(-I / c)
}

struct SpinorLocal {
    jets: [Jet; 4],
    scale: f64,
    /// `(−iħ∂_μ − qA_μ)ψ_k`, indexed `[k][μ]`.
    kinetic: [FourVector; 4],
}

fn spinor_local(psi: &SpinorWave, a: &PotentialField, e: &Event, ctx: &Context) -> Result<SpinorLocal> {
    let k = &ctx.constants;
    let mut jets = [Jet::constant(ZERO); 4];
    for (slot, comp) in jets.iter_mut().zip(psi.components.iter()) {
        *slot = field_jet(comp.as_ref(), e, ctx.method)?;
    }
    let scale = jets.iter().map(|j| j.value.norm()).fold(0.0, f64::max);
    if scale <= ctx.psi_floor {
        return Err(Error::NearZeroWavefunction {
            event: *e,
            magnitude: scale,
            floor: ctx.psi_floor,
        });
    }
    let av = a.value(e)?;
    let kinetic = jets.map(|j| j.grad4(k.c).scale(-I * k.hbar) - av.scale(j.value * k.q));
    Ok(SpinorLocal { jets, scale, kinetic })
}

/// Dirac residual in the requested form, divided by the largest component modulus.
pub fn dirac_residual(
    g: &GammaSet,
    psi: &SpinorWave,
    a: &PotentialField,
    e: &Event,
    ctx: &Context,
    form: DiracForm,
) -> Result<[C64; 4]> {
    let k = &ctx.constants;
    let loc = spinor_local(psi, a, e, ctx)?;
    let values = loc.jets.map(|j| j.value);
    let column = |mu: usize| -> [C64; 4] { std::array::from_fn(|kk| loc.kinetic[kk][mu]) };
    let mut out = [ZERO; 4];
    match form {
        DiracForm::Gamma => {
            for mu in 0..4 {
                let term = g.gamma[mu].apply(&column(mu));
                for j in 0..4 {
                    out[j] += term[j];
                }
            }
            for j in 0..4 {
                out[j] -= I * (k.m * k.c) * values[j];
            }
        }
        DiracForm::AlphaBeta => {
            let time = column(3);
            for j in 0..4 {
                out[j] += I * k.c * time[j];
            }
            for n in 0..3 {
                let term = g.alpha[n].apply(&column(n));
                for j in 0..4 {
                    out[j] += k.c * term[j];
                }
            }
            let mass = g.beta.apply(&values);
            for j in 0..4 {
                out[j] += k.m * k.c * k.c * mass[j];
            }
        }
    }
    Ok(out.map(|v| v / loc.scale))
}

pub fn max_abs(v: &[C64; 4]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Per-component velocities and their largest pairwise disagreement.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorVelocityConsistency {
    /// `(component index, u)` for each component above the floor.
    pub velocities: Vec<(usize, FourVector)>,
    pub max_deviation: f64,
}

pub fn spinor_velocity_consistency(
    psi: &SpinorWave,
    a: &PotentialField,
    e: &Event,
    ctx: &Context,
) -> Result<SpinorVelocityConsistency> {
    let mut velocities = Vec::new();
    for (k, comp) in psi.components.iter().enumerate() {
        if comp.value(e)?.norm() > ctx.psi_floor {
            velocities.push((k, extract_u(comp.as_ref(), a, e, ctx)?));
        }
    }
    if velocities.len() < 2 {
        return Err(Error::InsufficientComponents {
            event: *e,
            found: velocities.len(),
        });
    }
    let mut max_deviation = 0.0f64;
    for i in 0..velocities.len() {
        for j in (i + 1)..velocities.len() {
            max_deviation = max_deviation.max((velocities[i].1 - velocities[j].1).max_abs());
        }
    }
    Ok(SpinorVelocityConsistency {
        velocities,
        max_deviation,
    })
}

/// Free-field squared operator against the direct Klein-Gordon operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracKgCheck {
    /// `(γ·(−iħ∂) + imc)(γ·(−iħ∂) − imc)Ψ`, divided by the largest |Ψ_k|.
    pub squared: [C64; 4],
    /// `(−ħ²∂_μ∂_μ + m²c²)Ψ`, same normalization.
    pub kg_direct: [C64; 4],
}

impl DiracKgCheck {
    pub fn max_deviation(&self) -> f64 {
        (0..4)
            .map(|k| (self.squared[k] - self.kg_direct[k]).norm())
            .fold(0.0, f64::max)
    }
}

/// Applies the first-order operator twice using explicit matrix products.
///
/// Only the free case is supported.
pub fn dirac_to_kg_check(
    g: &GammaSet,
    psi: &SpinorWave,
    a: &PotentialField,
    e: &Event,
    ctx: &Context,
) -> Result<DiracKgCheck> {
    if !a.is_zero() {
        return Err(Error::Unsupported(
            "the squared Dirac operator is only checked for a vanishing potential".into(),
        ));
    }
    let k = &ctx.constants;
    let loc = spinor_local(psi, a, e, ctx)?;
    let mc = k.m * k.c;
    let hess: [Matrix4; 4] = loc.jets.map(|j| j.hess4(k.c));
    let grad: [FourVector; 4] = loc.jets.map(|j| j.grad4(k.c));
    let values = loc.jets.map(|j| j.value);

    // (D₋Ψ)_k and ∂_μ (D₋Ψ)_k.
    let mut lower = [ZERO; 4];
    let mut lower_grad = [[ZERO; 4]; 4];
    for kk in 0..4 {
        lower[kk] = -I * mc * values[kk];
        for mu in 0..4 {
            lower_grad[kk][mu] = -I * mc * grad[kk][mu];
        }
        for nu in 0..4 {
            for l in 0..4 {
                let gkl = g.gamma[nu][(kk, l)];
                if gkl == ZERO {
                    continue;
                }
                lower[kk] += gkl * (-I * k.hbar) * grad[l][nu];
                for mu in 0..4 {
                    lower_grad[kk][mu] += gkl * (-I * k.hbar) * hess[l][(mu, nu)];
                }
            }
        }
    }
    let mut squared = [ZERO; 4];
    for j in 0..4 {
        squared[j] = I * mc * lower[j];
        for mu in 0..4 {
            for kk in 0..4 {
                squared[j] += g.gamma[mu][(j, kk)] * (-I * k.hbar) * lower_grad[kk][mu];
            }
        }
    }
    let kg_direct: [C64; 4] =
        std::array::from_fn(|j| -k.hbar * k.hbar * loc.jets[j].laplace4(k.c) + mc * mc * values[j]);
    Ok(DiracKgCheck {
        squared: squared.map(|v| v / loc.scale),
        kg_direct: kg_direct.map(|v| v / loc.scale),
    })
}

/// Location of the smallest Dirac residual over a family of trial energies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyScan {
    pub energy: f64,
    /// Root-mean-square of the per-event γ-form residual at `energy`.
    pub residual: f64,
}

/// Scans the Coulomb ground-state shape over trial energies in `[lo, hi]`.
///
/// A uniform grid of `grid` energies brackets the minimum of the RMS
/// residual over `events`; golden-section search then narrows the bracket to
/// `1e-12`. The closed-form ground-state energy is never consulted.
pub fn dirac_coulomb_energy_scan(
    g: &GammaSet,
    z_alpha: f64,
    spin: Spin,
    events: &[Event],
    (lo, hi): (f64, f64),
    grid: usize,
    ctx: &Context,
) -> Result<EnergyScan> {
    if events.is_empty() || grid < 3 || lo >= hi || lo.is_nan() || hi.is_nan() {
        return Err(Error::InvalidParameter(
            "energy scan needs events, at least three grid points and lo < hi".into(),
        ));
    }
    let consts = ctx.constants;
    let potential = PotentialField::coulomb(z_alpha, &consts)?;
    let cost = |energy: f64| -> Result<f64> {
        let psi = dirac_coulomb_trial(z_alpha, energy, spin, &consts)?;
        let mut acc = 0.0;
        for e in events {
            let r = dirac_residual(g, &psi, &potential, e, ctx, DiracForm::Gamma)?;
            acc += r.iter().map(|z| z.norm_sqr()).sum::<f64>();
        }
        Ok((acc / events.len() as f64).sqrt())
    };
    let step = (hi - lo) / (grid - 1) as f64;
    let mut best = (0, f64::INFINITY);
    for i in 0..grid {
        let v = cost(lo + i as f64 * step)?;
        if v < best.1 {
            best = (i, v);
        }
    }
    let mut a = lo + best.0.saturating_sub(1) as f64 * step;
    let mut b = (lo + (best.0 + 1) as f64 * step).min(hi);
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (cost(x1)?, cost(x2)?);
    while b - a > 1e-12 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = cost(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = cost(x2)?;
        }
    }
    let energy = 0.5 * (a + b);
    Ok(EnergyScan {
        energy,
        residual: cost(energy)?,
    })
}
