//! Second-order jets and the differentiation engine.
//!
//! A [`Jet`] carries a value together with its gradient and Hessian in the
//! storage coordinates `(x1, x2, x3, t)`. Analytic fixtures are assembled from
//! jet arithmetic (product and chain rules), so their derivatives are exact up
//! to rounding. The imaginary-time conversion `∂_4 = (1/(ic)) ∂_t` happens
//! only at the boundary, in [`Jet::grad4`] and [`Jet::hess4`].

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::four::{Event, FourVector, Matrix4, C64, I, ZERO};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: C64,
    pub grad: [C64; 4],
    pub hess: [[C64; 4]; 4],
}

impl Jet {
    pub fn constant(value: C64) -> Self {
        Self {
            value,
            grad: [ZERO; 4],
            hess: [[ZERO; 4]; 4],
        }
    }

    /// The coordinate function for storage axis `axis` (3 is time).
    pub fn coordinate(e: &Event, axis: usize) -> Self {
        let mut j = Self::constant(e.to_array()[axis].into());
        j.grad[axis] = 1.0.into();
        j
    }

    /// Spatial radius `r = |x|`; `None` at the origin.
    pub fn radius(e: &Event) -> Option<Self> {
        let r = e.spatial_radius();
        if r == 0.0 {
            return None;
        }
        let x = [e.x1, e.x2, e.x3];
        let mut j = Self::constant(r.into());
        for a in 0..3 {
            j.grad[a] = (x[a] / r).into();
            for b in 0..3 {
                let delta = if a == b { 1.0 } else { 0.0 };
                j.hess[a][b] = ((delta - x[a] * x[b] / (r * r)) / r).into();
            }
        }
        Some(j)
    }

    /// Chain rule for `φ(self)` given `φ`, `φ'`, `φ''` evaluated at the value.
    pub fn compose(&self, f: C64, df: C64, d2f: C64) -> Self {
        let mut out = Self::constant(f);
        for a in 0..4 {
            out.grad[a] = df * self.grad[a];
            for b in 0..4 {
                out.hess[a][b] = d2f * self.grad[a] * self.grad[b] + df * self.hess[a][b];
            }
        }
        out
    }

    pub fn exp(&self) -> Self {
        let e = self.value.exp();
        self.compose(e, e, e)
    }

    /// `self^p` for a real exponent; the value must be nonzero.
    pub fn powf(&self, p: f64) -> Self {
        let v = self.value;
        self.compose(
            v.powf(p),
            p * v.powf(p - 1.0),
            p * (p - 1.0) * v.powf(p - 2.0),
        )
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            value: self.value * s,
            grad: self.grad.map(|g| g * s),
            hess: self.hess.map(|row| row.map(|h| h * s)),
        }
    }

    /// Gradient in the `x4 = ict` basis.
    pub fn grad4(&self, c: f64) -> FourVector {
        let to_x4 = 1.0 / (I * c);
        FourVector([self.grad[0], self.grad[1], self.grad[2], self.grad[3] * to_x4])
    }

    /// Hessian `∂_μ∂_ν` in the `x4 = ict` basis.
    pub fn hess4(&self, c: f64) -> Matrix4 {
        let to_x4 = 1.0 / (I * c);
        Matrix4::from_fn(|r, col| {
            let mut h = self.hess[r][col];
            if r == 3 {
                h *= to_x4;
            }
            if col == 3 {
                h *= to_x4;
            }
            h
        })
    }

    /// `∂_μ∂_μ f = ∇²f − (1/c²) ∂_t² f`.
    pub fn laplace4(&self, c: f64) -> C64 {
        self.hess[0][0] + self.hess[1][1] + self.hess[2][2] - self.hess[3][3] / (c * c)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        Jet {
            value: self.value + rhs.value,
            grad: std::array::from_fn(|a| self.grad[a] + rhs.grad[a]),
            hess: std::array::from_fn(|a| std::array::from_fn(|b| self.hess[a][b] + rhs.hess[a][b])),
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + rhs.scale((-1.0).into())
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut out = Jet::constant(self.value * rhs.value);
        for a in 0..4 {
            out.grad[a] = self.grad[a] * rhs.value + self.value * rhs.grad[a];
            for b in 0..4 {
                out.hess[a][b] = self.hess[a][b] * rhs.value
                    + self.grad[a] * rhs.grad[b]
                    + self.grad[b] * rhs.grad[a]
                    + self.value * rhs.hess[a][b];
            }
        }
        out
    }
}

/// A complex scalar field that can be evaluated and, analytically, expanded to second order.
pub trait ScalarField: Send + Sync {
    fn value(&self, e: &Event) -> Result<C64>;

    /// Analytic value, gradient and Hessian at `e`.
    fn jet(&self, e: &Event) -> Result<Jet>;
}

/// How derivatives are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum DerivativeMethod {
    #[default]
    Analytic,
    /// Fourth-order central differences with step `h` on every storage axis.
    Central { h: f64 },
}

impl DerivativeMethod {
    pub const DEFAULT_STEP: f64 = 1e-3;

    pub fn central(h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "finite-difference step must be positive and finite, got {h}"
            )));
        }
        Ok(DerivativeMethod::Central { h })
    }

    /// Step for routes that always difference numerically.
    pub fn step_or_default(&self) -> f64 {
        match self {
            DerivativeMethod::Analytic => Self::DEFAULT_STEP,
            DerivativeMethod::Central { h } => *h,
        }
    }
}

/// Values that central-difference stencils can combine.
pub trait Linear: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl Linear for C64 {}
impl Linear for FourVector {}

/// Fourth-order central first derivative along storage axis `axis`.
pub fn central_first<T: Linear>(
    f: &dyn Fn(&Event) -> Result<T>,
    e: &Event,
    axis: usize,
    h: f64,
) -> Result<T> {
    let fm2 = f(&e.shifted(axis, -2.0 * h))?;
    let fm1 = f(&e.shifted(axis, -h))?;
    let fp1 = f(&e.shifted(axis, h))?;
    let fp2 = f(&e.shifted(axis, 2.0 * h))?;
    Ok(((fm2 - fp2) + (fp1 - fm1) * 8.0) * (1.0 / (12.0 * h)))
}

const FIRST_OFFSETS: [f64; 4] = [-2.0, -1.0, 1.0, 2.0];
const FIRST_WEIGHTS: [f64; 4] = [1.0, -8.0, 8.0, -1.0];

/// Value, gradient and Hessian of `f` at `e` from fourth-order stencils.
pub fn numeric_jet(f: &dyn Fn(&Event) -> Result<C64>, e: &Event, h: f64) -> Result<Jet> {
    let f0 = f(e)?;
    let mut jet = Jet::constant(f0);
    for a in 0..4 {
        let fm2 = f(&e.shifted(a, -2.0 * h))?;
        let fm1 = f(&e.shifted(a, -h))?;
        let fp1 = f(&e.shifted(a, h))?;
        let fp2 = f(&e.shifted(a, 2.0 * h))?;
        jet.grad[a] = ((fm2 - fp2) + (fp1 - fm1) * 8.0) / (12.0 * h);
        jet.hess[a][a] = (-(fm2 + fp2) + (fm1 + fp1) * 16.0 - f0 * 30.0) / (12.0 * h * h);
    }
    for a in 0..4 {
        for b in (a + 1)..4 {
            let mut acc = ZERO;
            for (oa, wa) in FIRST_OFFSETS.iter().zip(FIRST_WEIGHTS) {
                for (ob, wb) in FIRST_OFFSETS.iter().zip(FIRST_WEIGHTS) {
                    let p = e.shifted(a, oa * h).shifted(b, ob * h);
                    acc += f(&p)? * (wa * wb);
                }
            }
            let mixed = acc / (144.0 * h * h);
            jet.hess[a][b] = mixed;
            jet.hess[b][a] = mixed;
        }
    }
    Ok(jet)
}

/// Jet of `field` at `e` by the requested method.
pub fn field_jet(field: &dyn ScalarField, e: &Event, method: DerivativeMethod) -> Result<Jet> {
    match method {
        DerivativeMethod::Analytic => field.jet(e),
        DerivativeMethod::Central { h } => numeric_jet(&|p| field.value(p), e, h),
    }
}

/// Which derivative [`differentiate`] returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffOrder {
    Grad4,
    Laplace4,
    /// `∂_μ f / f`, computed as a quotient and never through a logarithm.
    Dlog,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Derivative {
    Vector(FourVector),
    Scalar(C64),
}

impl Derivative {
    pub fn vector(self) -> Option<FourVector> {
        match self {
            Derivative::Vector(v) => Some(v),
            Derivative::Scalar(_) => None,
        }
    }

    pub fn scalar(self) -> Option<C64> {
        match self {
            Derivative::Scalar(s) => Some(s),
            Derivative::Vector(_) => None,
        }
    }
}

/// Checks `|value| > floor`, returning the near-zero error otherwise.
pub fn require_nonzero(value: C64, e: &Event, floor: f64) -> Result<()> {
    let magnitude = value.norm();
    if magnitude > floor {
        Ok(())
    } else {
        Err(Error::NearZeroWavefunction {
            event: *e,
            magnitude,
            floor,
        })
    }
}

/// Differentiates a scalar field at `e`.
///
/// `c` converts the time derivative to the `x4 = ict` axis; `floor` is the
/// near-zero threshold used by [`DiffOrder::Dlog`].
pub fn differentiate(
    f: &dyn ScalarField,
    e: &Event,
    order: DiffOrder,
    method: DerivativeMethod,
    c: f64,
    floor: f64,
) -> Result<Derivative> {
    let jet = field_jet(f, e, method)?;
    Ok(match order {
        DiffOrder::Grad4 => Derivative::Vector(jet.grad4(c)),
        DiffOrder::Laplace4 => Derivative::Scalar(jet.laplace4(c)),
        DiffOrder::Dlog => {
            require_nonzero(jet.value, e, floor)?;
            Derivative::Vector(jet.grad4(c).scale(1.0 / jet.value))
        }
    })
}
