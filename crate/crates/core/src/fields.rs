//! Electromagnetic four-potentials and gauge transformations.
//!
//! `A_4 = iφ/c` in the imaginary-time convention, so physical potentials have
//! real spatial components and a purely imaginary fourth component.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::four::{Event, FourVector, Matrix4, C64, I, ZERO};
use crate::jet::{central_first, DerivativeMethod, Jet};
use crate::units::PhysicalConstants;
use crate::wavefunctions::{GaugeDressed, ScalarWave, SpinorWave};

/// A real gauge function χ with analytic derivatives.
pub trait GaugeFunction: Send + Sync + fmt::Debug {
    /// Value, gradient and Hessian of χ in storage coordinates.
    fn jet(&self, e: &Event) -> Jet;
}

/// χ of degree at most two: `k + Σ l_a x_a + Σ_{a≤b} Q_ab x_a x_b`.
///
/// Coordinates are the storage coordinates `(x1, x2, x3, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticGauge {
    pub constant: f64,
    pub linear: [f64; 4],
    /// Only the upper triangle (`a ≤ b`) is read.
    pub quadratic: [[f64; 4]; 4],
}

impl QuadraticGauge {
    pub fn zero() -> Self {
        Self {
            constant: 0.0,
            linear: [0.0; 4],
            quadratic: [[0.0; 4]; 4],
        }
    }

    pub fn linear(k: [f64; 4]) -> Self {
        Self {
            linear: k,
            ..Self::zero()
        }
    }

    /// χ = x1·x2.
    pub fn x1_x2() -> Self {
        let mut g = Self::zero();
        g.quadratic[0][1] = 1.0;
        g
    }

    pub fn negated(&self) -> Self {
        Self {
            constant: -self.constant,
            linear: self.linear.map(|v| -v),
            quadratic: self.quadratic.map(|row| row.map(|v| -v)),
        }
    }
}

impl GaugeFunction for QuadraticGauge {
    fn jet(&self, e: &Event) -> Jet {
        let x = e.to_array();
        let mut value = self.constant;
        let mut grad = self.linear;
        let mut hess = [[0.0; 4]; 4];
        for a in 0..4 {
            value += self.linear[a] * x[a];
            for b in a..4 {
                let q = self.quadratic[a][b];
                if q == 0.0 {
                    continue;
                }
                value += q * x[a] * x[b];
                grad[a] += q * x[b];
                grad[b] += q * x[a];
                hess[a][b] += q;
                hess[b][a] += q;
            }
        }
        Jet {
            value: value.into(),
            grad: grad.map(C64::from),
            hess: hess.map(|row| row.map(C64::from)),
        }
    }
}

/// χ of degree three: a quadratic part plus `Σ C_abc x_a x_b x_c` over `a ≤ b ≤ c`.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicGauge {
    pub quadratic: QuadraticGauge,
    pub cubic: Vec<(f64, [usize; 3])>,
}

impl GaugeFunction for CubicGauge {
    fn jet(&self, e: &Event) -> Jet {
        let mut j = self.quadratic.jet(e);
        for &(coef, [a, b, c]) in &self.cubic {
            let term = Jet::coordinate(e, a) * Jet::coordinate(e, b) * Jet::coordinate(e, c);
            j = j + term.scale(coef.into());
        }
        j
    }
}

/// `factor · χ`.
#[derive(Debug, Clone)]
pub struct ScaledGauge {
    pub inner: Arc<dyn GaugeFunction>,
    pub factor: f64,
}

impl GaugeFunction for ScaledGauge {
    fn jet(&self, e: &Event) -> Jet {
        self.inner.jet(e).scale(self.factor.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialKind {
    Zero,
    Constant,
    Coulomb,
    PureGauge,
    Sum,
}

/// An electromagnetic four-potential `A_μ(x)` with analytic gradient.
#[derive(Debug, Clone)]
pub enum PotentialField {
    Zero,
    Constant(FourVector),
    /// Static point charge: `A_4 = i·strength/r`, spatial part zero.
    Coulomb { z_alpha: f64, strength: f64 },
    /// `A_μ = ∂_μ χ`.
    PureGauge { chi: Arc<dyn GaugeFunction>, c: f64 },
    Sum(Box<PotentialField>, Box<PotentialField>),
}

impl PotentialField {
    /// Attractive Coulomb potential for charge `q`: `qA_4 = −i·Zα·ħ/r`.
    ///
    /// `Zα` must lie in `(0, 1)`; the scalar Klein-Gordon fixture further needs `Zα < 1/2`.
    pub fn coulomb(z_alpha: f64, consts: &PhysicalConstants) -> Result<Self> {
        if !(z_alpha > 0.0 && z_alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "Coulomb coupling must lie in (0, 1), got {z_alpha}"
            )));
        }
        if consts.q == 0.0 {
            return Err(Error::InvalidParameter(
                "Coulomb potential needs a nonzero charge".into(),
            ));
        }
        Ok(PotentialField::Coulomb {
            z_alpha,
            strength: z_alpha * consts.hbar / (-consts.q),
        })
    }

    pub fn pure_gauge(chi: Arc<dyn GaugeFunction>, c: f64) -> Self {
        PotentialField::PureGauge { chi, c }
    }

    pub fn sum(self, other: PotentialField) -> Self {
        PotentialField::Sum(Box::new(self), Box::new(other))
    }

    pub fn kind(&self) -> PotentialKind {
        match self {
            PotentialField::Zero => PotentialKind::Zero,
            PotentialField::Constant(_) => PotentialKind::Constant,
            PotentialField::Coulomb { .. } => PotentialKind::Coulomb,
            PotentialField::PureGauge { .. } => PotentialKind::PureGauge,
            PotentialField::Sum(..) => PotentialKind::Sum,
        }
    }

    /// True when `A` vanishes identically.
    pub fn is_zero(&self) -> bool {
        match self {
            PotentialField::Zero => true,
            PotentialField::Constant(a) => *a == FourVector::ZERO,
            PotentialField::Sum(a, b) => a.is_zero() && b.is_zero(),
            _ => false,
        }
    }

    /// Spatial points where the potential is singular.
    pub fn singular_points(&self) -> Vec<[f64; 3]> {
        match self {
            PotentialField::Coulomb { .. } => vec![[0.0; 3]],
            PotentialField::Sum(a, b) => {
                let mut pts = a.singular_points();
                pts.extend(b.singular_points());
                pts
            }
            _ => Vec::new(),
        }
    }

    pub fn value(&self, e: &Event) -> Result<FourVector> {
        match self {
            PotentialField::Zero => Ok(FourVector::ZERO),
            PotentialField::Constant(a) => Ok(*a),
            PotentialField::Coulomb { strength, .. } => {
                let r = e.spatial_radius();
                if r == 0.0 {
                    return Err(Error::SingularPoint { event: *e });
                }
                Ok(FourVector::new(ZERO, ZERO, ZERO, I * (strength / r)))
            }
            PotentialField::PureGauge { chi, c } => Ok(chi.jet(e).grad4(*c)),
            PotentialField::Sum(a, b) => Ok(a.value(e)? + b.value(e)?),
        }
    }

    /// Analytic `∂_μ A_ν`, row μ, column ν.
    pub fn gradient(&self, e: &Event) -> Result<Matrix4> {
        match self {
            PotentialField::Zero | PotentialField::Constant(_) => Ok(Matrix4::ZERO),
            PotentialField::Coulomb { strength, .. } => {
                let r = e.spatial_radius();
                if r == 0.0 {
                    return Err(Error::SingularPoint { event: *e });
                }
                let x = [e.x1, e.x2, e.x3];
                let mut g = Matrix4::ZERO;
                for n in 0..3 {
                    g[(n, 3)] = -I * (strength * x[n] / (r * r * r));
                }
                Ok(g)
            }
            PotentialField::PureGauge { chi, c } => Ok(chi.jet(e).hess4(*c)),
            PotentialField::Sum(a, b) => Ok(a.gradient(e)? + b.gradient(e)?),
        }
    }

    /// `∂_μ A_ν` by the requested method; `c` converts the time axis.
    pub fn gradient_with(&self, e: &Event, method: DerivativeMethod, c: f64) -> Result<Matrix4> {
        match method {
            DerivativeMethod::Analytic => self.gradient(e),
            DerivativeMethod::Central { h } => {
                let f = |p: &Event| self.value(p);
                let mut g = Matrix4::ZERO;
                for axis in 0..4 {
                    let mut row = central_first(&f, e, axis, h)?;
                    if axis == 3 {
                        row = row.scale(1.0 / (I * c));
                    }
                    g.0[axis] = row.0;
                }
                Ok(g)
            }
        }
    }
}

/// `F_μν = ∂_μ A_ν − ∂_ν A_μ`, exactly antisymmetric.
pub fn field_strength(a: &PotentialField, e: &Event, method: DerivativeMethod, c: f64) -> Result<Matrix4> {
    let g = a.gradient_with(e, method, c)?;
    Ok(antisymmetric_part(&g))
}

/// `G − Gᵀ` with the lower triangle written as the exact negation of the upper.
pub(crate) fn antisymmetric_part(g: &Matrix4) -> Matrix4 {
    let mut f = Matrix4::ZERO;
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            let v = g[(mu, nu)] - g[(nu, mu)];
            f[(mu, nu)] = v;
            f[(nu, mu)] = -v;
        }
    }
    f
}

/// Lorenz-gauge divergence `∂_μ A_μ`.
pub fn lorenz_gauge_residual(a: &PotentialField, e: &Event, method: DerivativeMethod, c: f64) -> Result<C64> {
    let g = a.gradient_with(e, method, c)?;
    Ok((0..4).map(|k| g[(k, k)]).sum())
}

/// `A' = A + ∂χ`, `ψ' = ψ·exp(iqχ/ħ)`.
pub fn gauge_transform(
    a: &PotentialField,
    psi: Arc<dyn ScalarWave>,
    chi: Arc<dyn GaugeFunction>,
    consts: &PhysicalConstants,
) -> (PotentialField, Arc<dyn ScalarWave>) {
    let a2 = a
        .clone()
        .sum(PotentialField::pure_gauge(chi.clone(), consts.c));
    let psi2: Arc<dyn ScalarWave> = Arc::new(GaugeDressed::new(psi, chi, consts));
    (a2, psi2)
}

/// Spinor version of [`gauge_transform`]: every component picks up the same phase.
pub fn gauge_transform_spinor(
    a: &PotentialField,
    psi: &SpinorWave,
    chi: Arc<dyn GaugeFunction>,
    consts: &PhysicalConstants,
) -> (PotentialField, SpinorWave) {
    let a2 = a
        .clone()
        .sum(PotentialField::pure_gauge(chi.clone(), consts.c));
    (a2, psi.gauge_dressed(chi, consts))
}
