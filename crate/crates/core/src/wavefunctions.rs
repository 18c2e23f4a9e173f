//! Analytic wavefunction fixtures.
//!
//! Every fixture is unnormalized and builds its jet from product and chain
//! rules, so analytic derivatives are exact up to rounding. Energies are
//! closed-form claims; the residual suites are what certify them.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::GaugeFunction;
use crate::four::{Event, C64, I, ZERO};
use crate::jet::{Jet, ScalarField};
use crate::units::PhysicalConstants;

/// A scalar wavefunction fixture.
pub trait ScalarWave: ScalarField + fmt::Debug {
    fn label(&self) -> String;

    /// Energy carried by the fixture, when it has one.
    fn energy(&self) -> Option<f64> {
        None
    }

    /// Spatial points where the fixture is singular.
    fn singular_points(&self) -> Vec<[f64; 3]> {
        Vec::new()
    }
}

fn time_phase(e: &Event, energy: f64, hbar: f64) -> Jet {
    Jet::coordinate(e, 3).scale(-I * (energy / hbar)).exp()
}

/// `exp(i(p·x − Et)/ħ)` with `E = sqrt(p²c² + m²c⁴)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWave {
    pub momentum: [f64; 3],
    pub energy: f64,
    hbar: f64,
}

pub fn plane_wave(momentum: [f64; 3], consts: &PhysicalConstants) -> Result<PlaneWave> {
    if !momentum.iter().all(|p| p.is_finite()) {
        return Err(Error::InvalidParameter("momentum must be finite".into()));
    }
    Ok(PlaneWave {
        momentum,
        energy: consts.free_energy(momentum),
        hbar: consts.hbar,
    })
}

impl PlaneWave {
    fn phase(&self, e: &Event) -> f64 {
        let p = self.momentum;
        (p[0] * e.x1 + p[1] * e.x2 + p[2] * e.x3 - self.energy * e.t) / self.hbar
    }
}

impl ScalarField for PlaneWave {
    fn value(&self, e: &Event) -> Result<C64> {
        Ok(C64::from_polar(1.0, self.phase(e)))
    }

    fn jet(&self, e: &Event) -> Result<Jet> {
        let value = self.value(e)?;
        let k = [
            I * (self.momentum[0] / self.hbar),
            I * (self.momentum[1] / self.hbar),
            I * (self.momentum[2] / self.hbar),
            -I * (self.energy / self.hbar),
        ];
        Ok(Jet {
            value,
            grad: k.map(|ka| ka * value),
            hess: std::array::from_fn(|a| std::array::from_fn(|b| k[a] * k[b] * value)),
        })
    }
}

impl ScalarWave for PlaneWave {
    fn label(&self) -> String {
        format!("plane-wave(p={:?})", self.momentum)
    }
    fn energy(&self) -> Option<f64> {
        Some(self.energy)
    }
}

/// Klein-Gordon Coulomb ground state `r^(γ−1) e^(−λr) e^(−iEt/ħ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KgCoulomb1s {
    pub z_alpha: f64,
    pub gamma: f64,
    pub lambda: f64,
    pub energy: f64,
    hbar: f64,
}

/// Ground state of the scalar wave equation in the attractive Coulomb potential.
///
/// `γ = (1 + sqrt(1 − 4(Zα)²))/2`, `E = mc²/sqrt(1 + (Zα)²/γ²)`, `λ = E·Zα/(γħc)`.
pub fn kg_coulomb_1s(z_alpha: f64, consts: &PhysicalConstants) -> Result<KgCoulomb1s> {
    if !(z_alpha > 0.0 && z_alpha < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "scalar Coulomb fixture needs 0 < Zα < 1/2, got {z_alpha}"
        )));
    }
    let gamma = 0.5 * (1.0 + (1.0 - 4.0 * z_alpha * z_alpha).sqrt());
    let energy = consts.rest_energy() / (1.0 + (z_alpha / gamma).powi(2)).sqrt();
    let lambda = energy * z_alpha / (gamma * consts.hbar * consts.c);
    Ok(KgCoulomb1s {
        z_alpha,
        gamma,
        lambda,
        energy,
        hbar: consts.hbar,
    })
}

impl KgCoulomb1s {
    /// Same radial profile with a different time frequency (negative controls).
    pub fn with_energy(&self, energy: f64) -> Self {
        Self {
            energy,
            ..self.clone()
        }
    }

    fn radial(&self, r: f64) -> f64 {
        r.powf(self.gamma - 1.0) * (-self.lambda * r).exp()
    }
}

impl ScalarField for KgCoulomb1s {
    fn value(&self, e: &Event) -> Result<C64> {
        let r = e.spatial_radius();
        if r == 0.0 {
            return Err(Error::SingularPoint { event: *e });
        }
        Ok(C64::from_polar(self.radial(r), -self.energy * e.t / self.hbar))
    }

    fn jet(&self, e: &Event) -> Result<Jet> {
        let r = Jet::radius(e).ok_or(Error::SingularPoint { event: *e })?;
        let radial = r.powf(self.gamma - 1.0) * r.scale((-self.lambda).into()).exp();
        Ok(radial * time_phase(e, self.energy, self.hbar))
    }
}

impl ScalarWave for KgCoulomb1s {
    fn label(&self) -> String {
        format!("kg-coulomb-1s(Zα={})", self.z_alpha)
    }
    fn energy(&self) -> Option<f64> {
        Some(self.energy)
    }
    fn singular_points(&self) -> Vec<[f64; 3]> {
        vec![[0.0; 3]]
    }
}

/// `ψ · exp(iqχ/ħ)`.
#[derive(Debug, Clone)]
pub struct GaugeDressed {
    inner: Arc<dyn ScalarWave>,
    chi: Arc<dyn GaugeFunction>,
    charge_over_hbar: f64,
}

impl GaugeDressed {
    pub fn new(inner: Arc<dyn ScalarWave>, chi: Arc<dyn GaugeFunction>, consts: &PhysicalConstants) -> Self {
        Self {
            inner,
            chi,
            charge_over_hbar: consts.q / consts.hbar,
        }
    }

    fn phase(&self, e: &Event) -> Jet {
        self.chi.jet(e).scale(I * self.charge_over_hbar).exp()
    }
}

impl ScalarField for GaugeDressed {
    fn value(&self, e: &Event) -> Result<C64> {
        Ok(self.inner.value(e)? * self.phase(e).value)
    }
    fn jet(&self, e: &Event) -> Result<Jet> {
        Ok(self.inner.jet(e)? * self.phase(e))
    }
}

impl ScalarWave for GaugeDressed {
    fn label(&self) -> String {
        format!("gauge-dressed({})", self.inner.label())
    }
    fn energy(&self) -> Option<f64> {
        self.inner.energy()
    }
    fn singular_points(&self) -> Vec<[f64; 3]> {
        self.inner.singular_points()
    }
}

/// `coefficient · ψ`; a zero coefficient gives an identically vanishing component.
#[derive(Debug, Clone)]
pub struct Scaled {
    inner: Arc<dyn ScalarWave>,
    coefficient: C64,
}

impl Scaled {
    pub fn new(inner: Arc<dyn ScalarWave>, coefficient: C64) -> Self {
        Self { inner, coefficient }
    }
}

impl ScalarField for Scaled {
    fn value(&self, e: &Event) -> Result<C64> {
        if self.coefficient == ZERO {
            return Ok(ZERO);
        }
        Ok(self.inner.value(e)? * self.coefficient)
    }
    fn jet(&self, e: &Event) -> Result<Jet> {
        if self.coefficient == ZERO {
            return Ok(Jet::constant(ZERO));
        }
        Ok(self.inner.jet(e)?.scale(self.coefficient))
    }
}

impl ScalarWave for Scaled {
    fn label(&self) -> String {
        format!("{}·{}", self.coefficient, self.inner.label())
    }
    fn energy(&self) -> Option<f64> {
        self.inner.energy()
    }
    fn singular_points(&self) -> Vec<[f64; 3]> {
        self.inner.singular_points()
    }
}

/// Smooth test field `P(x) · exp(−w Σ x_a²)` with a complex quadratic polynomial `P`.
///
/// Not a solution of anything; used for operator identities.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyGaussian {
    pub constant: C64,
    pub linear: [C64; 4],
    pub quadratic: [[C64; 4]; 4],
    pub width: f64,
}

impl ScalarField for PolyGaussian {
    fn value(&self, e: &Event) -> Result<C64> {
        Ok(self.jet(e)?.value)
    }

    fn jet(&self, e: &Event) -> Result<Jet> {
        let x: [Jet; 4] = std::array::from_fn(|a| Jet::coordinate(e, a));
        let mut poly = Jet::constant(self.constant);
        let mut sq = Jet::constant(ZERO);
        for a in 0..4 {
            poly = poly + x[a].scale(self.linear[a]);
            sq = sq + x[a] * x[a];
            for b in a..4 {
                if self.quadratic[a][b] != ZERO {
                    poly = poly + (x[a] * x[b]).scale(self.quadratic[a][b]);
                }
            }
        }
        Ok(poly * sq.scale((-self.width).into()).exp())
    }
}

impl ScalarWave for PolyGaussian {
    fn label(&self) -> String {
        "poly-gaussian".into()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    fn pauli_spinor(self) -> [C64; 2] {
        match self {
            Spin::Up => [C64::from(1.0), ZERO],
            Spin::Down => [ZERO, C64::from(1.0)],
        }
    }
}

/// `σ·v χ` for a complex 3-vector `v`.
fn sigma_dot(v: [C64; 3], chi: [C64; 2]) -> [C64; 2] {
    [
        v[2] * chi[0] + (v[0] - I * v[1]) * chi[1],
        (v[0] + I * v[1]) * chi[0] - v[2] * chi[1],
    ]
}

/// Four-component wavefunction, one column.
#[derive(Debug, Clone)]
pub struct SpinorWave {
    pub components: [Arc<dyn ScalarWave>; 4],
    pub energy: Option<f64>,
    pub label: String,
}

impl SpinorWave {
    pub fn new(components: [Arc<dyn ScalarWave>; 4], energy: Option<f64>, label: impl Into<String>) -> Self {
        Self {
            components,
            energy,
            label: label.into(),
        }
    }

    pub fn values(&self, e: &Event) -> Result<[C64; 4]> {
        let mut out = [ZERO; 4];
        for (k, comp) in self.components.iter().enumerate() {
            out[k] = comp.value(e)?;
        }
        Ok(out)
    }

    /// Every component multiplied by `exp(iqχ/ħ)`.
    pub fn gauge_dressed(&self, chi: Arc<dyn GaugeFunction>, consts: &PhysicalConstants) -> Self {
        let components = self.components.clone().map(|c| {
            Arc::new(GaugeDressed::new(c, chi.clone(), consts)) as Arc<dyn ScalarWave>
        });
        Self {
            components,
            energy: self.energy,
            label: format!("gauge-dressed({})", self.label),
        }
    }

    pub fn singular_points(&self) -> Vec<[f64; 3]> {
        self.components
            .iter()
            .flat_map(|c| c.singular_points())
            .collect()
    }
}

/// Free positive-energy spinor `w(p) exp(i(p·x − Et)/ħ)`.
///
/// Upper pair is the Pauli spinor, lower pair `cσ·p/(E + mc²)` times it.
pub fn dirac_plane_wave(momentum: [f64; 3], spin: Spin, consts: &PhysicalConstants) -> Result<SpinorWave> {
    let wave: Arc<dyn ScalarWave> = Arc::new(plane_wave(momentum, consts)?);
    let energy = consts.free_energy(momentum);
    let chi = spin.pauli_spinor();
    let factor = consts.c / (energy + consts.rest_energy());
    let lower = sigma_dot(momentum.map(|p| C64::from(p * factor)), chi);
    let w = [chi[0], chi[1], lower[0], lower[1]];
    let components = w.map(|wk| Arc::new(Scaled::new(wave.clone(), wk)) as Arc<dyn ScalarWave>);
    Ok(SpinorWave::new(
        components,
        Some(energy),
        format!("dirac-plane-wave(p={momentum:?}, {spin:?})"),
    ))
}

/// One component of the Coulomb ground-state spinor.
///
/// The spinor is `G(r)·(χ, i·a·(σ·r̂)χ)` with `G = r^(s−1) e^(−λr) e^(−iEt/ħ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracCoulombComponent {
    index: usize,
    spin: Spin,
    s: f64,
    ratio: f64,
    lambda: f64,
    energy: f64,
    hbar: f64,
    z_alpha: f64,
}

impl DiracCoulombComponent {
    /// Angular jet multiplying `G`, or `None` for an identically zero component.
    fn angular(&self, e: &Event) -> Result<Option<Jet>> {
        let chi = self.spin.pauli_spinor();
        if self.index < 2 {
            if chi[self.index] == ZERO {
                return Ok(None);
            }
            return Ok(Some(Jet::constant(chi[self.index])));
        }
        let inv_r = Jet::radius(e)
            .ok_or(Error::SingularPoint { event: *e })?
            .powf(-1.0);
        let x: [Jet; 3] = std::array::from_fn(|a| Jet::coordinate(e, a));
        // (σ·x̂ χ)_k as a combination of x1, x2, x3.
        let coeffs: [C64; 3] = std::array::from_fn(|a| {
            let mut unit = [ZERO; 3];
            unit[a] = C64::from(1.0);
            sigma_dot(unit, chi)[self.index - 2]
        });
        if coeffs.iter().all(|c| *c == ZERO) {
            return Ok(None);
        }
        let mut numerator = Jet::constant(ZERO);
        for a in 0..3 {
            if coeffs[a] != ZERO {
                numerator = numerator + x[a].scale(coeffs[a]);
            }
        }
        Ok(Some((numerator * inv_r).scale(I * self.ratio)))
    }
}

impl ScalarField for DiracCoulombComponent {
    fn value(&self, e: &Event) -> Result<C64> {
        Ok(self.jet(e)?.value)
    }

    fn jet(&self, e: &Event) -> Result<Jet> {
        let r = Jet::radius(e).ok_or(Error::SingularPoint { event: *e })?;
        let Some(angular) = self.angular(e)? else {
            return Ok(Jet::constant(ZERO));
        };
        let radial = r.powf(self.s - 1.0) * r.scale((-self.lambda).into()).exp();
        Ok(radial * time_phase(e, self.energy, self.hbar) * angular)
    }
}

impl ScalarWave for DiracCoulombComponent {
    fn label(&self) -> String {
        format!("dirac-coulomb-1s[{}](Zα={})", self.index + 1, self.z_alpha)
    }
    fn energy(&self) -> Option<f64> {
        Some(self.energy)
    }
    fn singular_points(&self) -> Vec<[f64; 3]> {
        vec![[0.0; 3]]
    }
}

/// Coulomb ground-state spinor with `E = mc²·sqrt(1 − (Zα)²)`.
pub fn dirac_coulomb_1s(z_alpha: f64, spin: Spin, consts: &PhysicalConstants) -> Result<SpinorWave> {
    validate_dirac_coupling(z_alpha)?;
    let energy = consts.rest_energy() * (1.0 - z_alpha * z_alpha).sqrt();
    dirac_coulomb_trial(z_alpha, energy, spin, consts)
}

/// The Coulomb ground-state shape evaluated at a trial energy.
///
/// The power `s = sqrt(1 − (Zα)²)` and the small/large ratio `a = (1 − s)/Zα`
/// are held fixed; the decay rate follows the trial energy,
/// `λ = sqrt(m²c⁴ − E²)/(ħc)`. Only the true energy makes this a solution.
pub fn dirac_coulomb_trial(z_alpha: f64, energy: f64, spin: Spin, consts: &PhysicalConstants) -> Result<SpinorWave> {
    validate_dirac_coupling(z_alpha)?;
    let rest = consts.rest_energy();
    if !(energy > 0.0 && energy < rest) {
        return Err(Error::InvalidParameter(format!(
            "bound-state trial energy must lie in (0, mc²), got {energy}"
        )));
    }
    let s = (1.0 - z_alpha * z_alpha).sqrt();
    // (1 − s)/Zα, written without the cancellation at small Zα.
    let ratio = z_alpha / (1.0 + s);
    let lambda = (rest * rest - energy * energy).sqrt() / (consts.hbar * consts.c);
    let components = std::array::from_fn(|index| {
        Arc::new(DiracCoulombComponent {
            index,
            spin,
            s,
            ratio,
            lambda,
            energy,
            hbar: consts.hbar,
            z_alpha,
        }) as Arc<dyn ScalarWave>
    });
    Ok(SpinorWave::new(
        components,
        Some(energy),
        format!("dirac-coulomb-1s(Zα={z_alpha}, {spin:?})"),
    ))
}

fn validate_dirac_coupling(z_alpha: f64) -> Result<()> {
    if !(z_alpha > 0.0 && z_alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "Dirac Coulomb fixture needs 0 < Zα < 1, got {z_alpha}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::numeric_jet;

    fn natural() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    fn assert_jets_close(w: &dyn ScalarWave, e: &Event, tol: f64) {
        let exact = w.jet(e).unwrap();
        let approx = numeric_jet(&|p| w.value(p), e, 1e-3).unwrap();
        let scale = exact.value.norm().max(1e-300);
        assert!((exact.value - w.value(e).unwrap()).norm() <= 1e-14 * scale);
        for a in 0..4 {
            let err = (exact.grad[a] - approx.grad[a]).norm() / scale;
            assert!(err < tol, "{} grad[{a}] rel err {err:e}", w.label());
        }
    }

    #[test]
    fn plane_wave_has_unit_modulus() {
        let w = plane_wave([0.3, -0.2, 0.1], &natural()).unwrap();
        for k in 0..50 {
            let e = Event::new(k as f64 * 0.37, -1.3 * k as f64, 0.01, 7.0 - k as f64);
            assert!((w.value(&e).unwrap().norm() - 1.0).abs() <= 2.0 * f64::EPSILON);
        }
    }

    #[test]
    fn plane_wave_energy() {
        let w = plane_wave([1.0, 0.0, 0.0], &natural()).unwrap();
        assert!((w.energy - 2f64.sqrt()).abs() < 1e-15);
        let rest = plane_wave([0.0; 3], &natural()).unwrap();
        assert_eq!(rest.energy, 1.0);
    }

    #[test]
    fn kg_coulomb_parameters() {
        let w = kg_coulomb_1s(0.4, &natural()).unwrap();
        assert!((w.gamma - 0.8).abs() < 1e-15);
        let e = 1.0 / (1.0f64 + 0.25).sqrt();
        assert!((w.energy - e).abs() < 1e-15);
        assert!((w.lambda - e * 0.5).abs() < 1e-15);
    }

    #[test]
    fn kg_coulomb_free_limit() {
        let w = kg_coulomb_1s(1e-6, &natural()).unwrap();
        assert!((w.gamma - 1.0).abs() < 1e-11);
        assert!(w.energy < 1.0 && 1.0 - w.energy < 1e-11);
    }

    #[test]
    fn kg_coulomb_rejects_out_of_range() {
        assert!(kg_coulomb_1s(0.0, &natural()).is_err());
        assert!(kg_coulomb_1s(0.5, &natural()).is_err());
        assert!(kg_coulomb_1s(-0.1, &natural()).is_err());
        let w = kg_coulomb_1s(0.4, &natural()).unwrap();
        assert!(matches!(w.value(&Event::ORIGIN), Err(Error::SingularPoint { .. })));
    }

    #[test]
    fn dirac_coulomb_rejects_out_of_range() {
        assert!(dirac_coulomb_1s(1.0, Spin::Up, &natural()).is_err());
        assert!(dirac_coulomb_1s(0.0, Spin::Up, &natural()).is_err());
        assert!(dirac_coulomb_trial(0.4, 1.2, Spin::Up, &natural()).is_err());
    }

    #[test]
    fn dirac_plane_wave_spinors() {
        let k = natural();
        let rest = dirac_plane_wave([0.0; 3], Spin::Up, &k).unwrap();
        let e = Event::new(0.1, 0.2, 0.3, 0.4);
        let v = rest.values(&e).unwrap();
        assert!(v[0].norm() > 0.0);
        assert_eq!(&v[1..], &[ZERO; 3]);
        let down = dirac_plane_wave([0.0; 3], Spin::Down, &k).unwrap();
        let v = down.values(&e).unwrap();
        assert_eq!(v[0], ZERO);
        assert!(v[1].norm() > 0.0);

        let moving = dirac_plane_wave([1.0, 0.0, 0.0], Spin::Up, &k).unwrap();
        let v = moving.values(&Event::ORIGIN).unwrap();
        assert_eq!(v[0], C64::from(1.0));
        assert_eq!(v[1], ZERO);
        assert_eq!(v[2], ZERO);
        assert!((v[3] - C64::from(1.0 / (1.0 + 2f64.sqrt()))).norm() < 1e-15);
    }

    #[test]
    fn dirac_coulomb_free_limit_is_rest_spinor() {
        let w = dirac_coulomb_1s(1e-8, Spin::Up, &natural()).unwrap();
        assert!((w.energy.unwrap() - 1.0).abs() < 1e-15);
        let v = w.values(&Event::new(0.3, 0.4, 1.2, 0.0)).unwrap();
        let big = v[0].norm();
        assert!(v[1].norm() == 0.0);
        assert!(v[2].norm() / big < 1e-8 && v[3].norm() / big < 1e-8, "{v:?}");
    }

    #[test]
    fn analytic_derivatives_match_stencils() {
        let k = natural();
        let events = [
            Event::new(0.7, 0.3, -0.2, 0.1),
            Event::new(-1.4, 2.0, 0.5, -0.8),
            Event::new(0.1, -0.6, 0.9, 2.5),
        ];
        let mut waves: Vec<Arc<dyn ScalarWave>> = vec![
            Arc::new(plane_wave([0.3, -0.2, 0.1], &k).unwrap()),
            Arc::new(kg_coulomb_1s(0.4, &k).unwrap()),
        ];
        waves.extend(dirac_coulomb_1s(0.4, Spin::Up, &k).unwrap().components);
        waves.extend(dirac_coulomb_1s(0.4, Spin::Down, &k).unwrap().components);
        for w in &waves {
            for e in &events {
                if w.value(e).unwrap().norm() > 1e-12 {
                    assert_jets_close(w.as_ref(), e, 1e-6);
                }
            }
        }
    }
}
