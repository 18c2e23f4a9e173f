//! Four-vectors in the imaginary-time convention.
//!
//! Coordinates are `x_μ = (x1, x2, x3, x4 = ict)`, so there is no metric
//! tensor: every contraction is the plain sum `a_μ b_μ`. Events store the
//! real time `t`; the factor `ic` only ever appears in the fourth component
//! of a four-vector and in `∂_4 = (1/(ic)) ∂_t`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// A space-time point with real coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Event {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub t: f64,
}

impl Event {
    pub const ORIGIN: Event = Event {
        x1: 0.0,
        x2: 0.0,
        x3: 0.0,
        t: 0.0,
    };

    pub fn new(x1: f64, x2: f64, x3: f64, t: f64) -> Self {
        Self { x1, x2, x3, t }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// Coordinates in storage order `(x1, x2, x3, t)`.
    pub fn to_array(self) -> [f64; 4] {
        [self.x1, self.x2, self.x3, self.t]
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    pub fn spatial_radius(&self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    /// Event displaced by `delta` along storage axis `axis` (3 is time).
    pub fn shifted(self, axis: usize, delta: f64) -> Self {
        let mut a = self.to_array();
        a[axis] += delta;
        Self::from_array(a)
    }

    /// Position four-vector `(x1, x2, x3, ict)`.
    pub fn position(&self, c: f64) -> FourVector {
        FourVector::new(
            C64::from(self.x1),
            C64::from(self.x2),
            C64::from(self.x3),
            I * c * self.t,
        )
    }

    /// Straight-line interpolation `self + s (other − self)`.
    pub fn lerp(&self, other: &Event, s: f64) -> Event {
        let a = self.to_array();
        let b = other.to_array();
        Event::from_array(std::array::from_fn(|k| a[k] + s * (b[k] - a[k])))
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(x1={}, x2={}, x3={}, t={})",
            self.x1, self.x2, self.x3, self.t
        )
    }
}

/// Four complex components indexed `0..4` for `μ = 1..4`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourVector(pub [C64; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([ZERO; 4]);

    pub fn new(a1: C64, a2: C64, a3: C64, a4: C64) -> Self {
        Self([a1, a2, a3, a4])
    }

    /// Spatial part real, fourth component `i·a4`.
    pub fn from_real_imag(a1: f64, a2: f64, a3: f64, a4: f64) -> Self {
        Self([a1.into(), a2.into(), a3.into(), I * a4])
    }

    pub fn components(&self) -> &[C64; 4] {
        &self.0
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(self.0.map(|a| a * s))
    }

    /// Largest component modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Euclidean length of the component moduli, `sqrt(Σ|a_μ|²)`.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }
}

impl Index<usize> for FourVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for FourVector {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.0[i]
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|k| self.0[k] + rhs.0[k]))
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|k| self.0[k] - rhs.0[k]))
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector(self.0.map(|a| -a))
    }
}

impl Mul<C64> for FourVector {
    type Output = FourVector;
    fn mul(self, rhs: C64) -> FourVector {
        self.scale(rhs)
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, rhs: f64) -> FourVector {
        self.scale(rhs.into())
    }
}

/// `Σ_μ a_μ b_μ` with no conjugation and no metric.
pub fn contract(a: &FourVector, b: &FourVector) -> C64 {
    a.0.iter().zip(b.0.iter()).map(|(x, y)| x * y).sum()
}

/// 4×4 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Matrix4(pub [[C64; 4]; 4]);

impl Matrix4 {
    pub const ZERO: Matrix4 = Matrix4([[ZERO; 4]; 4]);

    pub fn identity() -> Self {
        Self::diagonal([C64::from(1.0); 4])
    }

    pub fn diagonal(d: [C64; 4]) -> Self {
        let mut m = Self::ZERO;
        for k in 0..4 {
            m.0[k][k] = d[k];
        }
        m
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> C64) -> Self {
        Self(std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.0[c][r])
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_fn(|r, c| self.0[r][c] * s)
    }

    /// `(M − Mᵀ)/2`: the exactly antisymmetric part.
    pub fn antisymmetrized(&self) -> Self {
        let mut out = Self::ZERO;
        for r in 0..4 {
            for c in (r + 1)..4 {
                let v = 0.5 * (self.0[r][c] - self.0[c][r]);
                out.0[r][c] = v;
                out.0[c][r] = -v;
            }
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|row| row.iter())
            .map(|a| a.norm())
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &[C64; 4]) -> [C64; 4] {
        std::array::from_fn(|r| (0..4).map(|c| self.0[r][c] * v[c]).sum())
    }

    /// `Σ_ν M_μν v_ν`.
    pub fn contract_right(&self, v: &FourVector) -> FourVector {
        FourVector(self.apply(&v.0))
    }

    pub fn is_hermitian(&self) -> bool {
        (0..4).all(|r| (0..4).all(|c| self.0[r][c] == self.0[c][r].conj()))
    }
}

impl Index<(usize, usize)> for Matrix4 {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.0[r][c]
    }
}

impl IndexMut<(usize, usize)> for Matrix4 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.0[r][c]
    }
}

impl Add for Matrix4 {
    type Output = Matrix4;
    fn add(self, rhs: Matrix4) -> Matrix4 {
        Matrix4::from_fn(|r, c| self.0[r][c] + rhs.0[r][c])
    }
}

impl Sub for Matrix4 {
    type Output = Matrix4;
    fn sub(self, rhs: Matrix4) -> Matrix4 {
        Matrix4::from_fn(|r, c| self.0[r][c] - rhs.0[r][c])
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;
    fn mul(self, rhs: Matrix4) -> Matrix4 {
        Matrix4::from_fn(|r, c| (0..4).map(|k| self.0[r][k] * rhs.0[k][c]).sum())
    }
}

impl Mul<C64> for Matrix4 {
    type Output = Matrix4;
    fn mul(self, rhs: C64) -> Matrix4 {
        self.scale(rhs)
    }
}

/// Lorentz factor for speed `v`, or an error when `|v| ≥ c`.
pub fn lorentz_factor(v: f64, c: f64) -> Result<f64> {
    if !v.is_finite() || v.abs() >= c {
        return Err(Error::InvalidBoost { v, c });
    }
    Ok(1.0 / (1.0 - (v / c).powi(2)).sqrt())
}

/// Boost along x1 with speed `v`: `x1' = γ(x1 − vt)`, `t' = γ(t − v x1/c²)`.
pub fn boost_x1(e: &Event, v: f64, c: f64) -> Result<Event> {
    let gamma = lorentz_factor(v, c)?;
    Ok(Event {
        x1: gamma * (e.x1 - v * e.t),
        x2: e.x2,
        x3: e.x3,
        t: gamma * (e.t - v * e.x1 / (c * c)),
    })
}
