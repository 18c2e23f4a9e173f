use crate::jet::DerivativeMethod;
use crate::units::PhysicalConstants;

/// Evaluation settings shared by every residual operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Context {
    pub constants: PhysicalConstants,
    pub method: DerivativeMethod,
    /// Absolute near-zero threshold ε_ψ for wavefunction magnitudes.
    pub psi_floor: f64,
}

impl Default for Context {
    fn default() -> Self {
        Self {
            constants: PhysicalConstants::default(),
            method: DerivativeMethod::Analytic,
            psi_floor: Self::RELATIVE_FLOOR,
        }
    }
}

impl Context {
    /// ε_ψ relative to the largest |ψ| in a sample cloud.
    pub const RELATIVE_FLOOR: f64 = 1e-12;

    pub fn new(constants: PhysicalConstants, method: DerivativeMethod) -> Self {
        Self {
            constants,
            method,
            psi_floor: Self::RELATIVE_FLOOR,
        }
    }

    pub fn with_method(mut self, method: DerivativeMethod) -> Self {
        self.method = method;
        self
    }

    /// Sets ε_ψ from the largest wavefunction magnitude over the active cloud.
    pub fn with_cloud_scale(mut self, max_abs_psi: f64) -> Self {
        self.psi_floor = Self::RELATIVE_FLOOR * max_abs_psi;
        self
    }

    pub fn analytic(&self) -> Self {
        self.with_method(DerivativeMethod::Analytic)
    }
}
