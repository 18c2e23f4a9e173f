mod common;

use std::sync::Arc;

use velfield::fields::{
    field_strength, gauge_transform, lorenz_gauge_residual, CubicGauge, GaugeFunction, PotentialField, QuadraticGauge,
};
use velfield::wavefunctions::{kg_coulomb_1s, plane_wave, ScalarWave};
use velfield::{DerivativeMethod, FourVector, PhysicalConstants, C64};

fn cubic_gauge(r: &mut rand_chacha::ChaCha8Rng) -> CubicGauge {
    use rand::Rng;
    let quadratic = common::random_quadratic_gauge(r);
    let mut cubic = Vec::new();
    for a in 0..4 {
        for b in a..4 {
            for c in b..4 {
                cubic.push((r.gen_range(-0.2..0.2), [a, b, c]));
            }
        }
    }
    CubicGauge { quadratic, cubic }
}

fn catalog(consts: &PhysicalConstants) -> Vec<PotentialField> {
    let mut r = common::rng(11);
    let coulomb = PotentialField::coulomb(0.4, consts).unwrap();
    let quad: Arc<dyn GaugeFunction> = Arc::new(common::random_quadratic_gauge(&mut r));
    let cubic: Arc<dyn GaugeFunction> = Arc::new(cubic_gauge(&mut r));
    vec![
        PotentialField::Zero,
        PotentialField::Constant(FourVector::from_real_imag(0.3, -0.2, 0.1, 0.7)),
        coulomb.clone(),
        PotentialField::pure_gauge(quad, consts.c),
        coulomb.sum(PotentialField::pure_gauge(cubic, consts.c)),
    ]
}

#[test]
fn analytic_gradients_match_central_differences() {
    let consts = PhysicalConstants::default();
    let events = common::shell_cloud(3, 1000, 0.5, 5.0);
    let numeric = DerivativeMethod::central(1e-3).unwrap();
    for a in catalog(&consts) {
        for e in &events {
            let exact = a.gradient(e).unwrap();
            let approx = a.gradient_with(e, numeric, consts.c).unwrap();
            let scale = exact.max_abs().max(a.value(e).unwrap().max_abs()).max(1.0);
            let err = (exact - approx).max_abs() / scale;
            assert!(err < 1e-6, "{:?} at {e}: relative error {err}", a.kind());
        }
    }
}

#[test]
fn lorenz_condition_cases() {
    let consts = PhysicalConstants::default();
    let coulomb = PotentialField::coulomb(0.4, &consts).unwrap();
    for e in common::shell_cloud(4, 50, 0.5, 5.0) {
        let r = lorenz_gauge_residual(&coulomb, &e, DerivativeMethod::Analytic, 1.0).unwrap();
        assert!(r.norm() < 1e-14);
    }
    let mut chi = QuadraticGauge::zero();
    chi.quadratic[0][0] = 1.0;
    let pure = PotentialField::pure_gauge(Arc::new(chi), 1.0);
    for e in common::box_cloud(5, 20, 2.0) {
        let r = lorenz_gauge_residual(&pure, &e, DerivativeMethod::Analytic, 1.0).unwrap();
        assert!((r - C64::from(2.0)).norm() < 1e-14);
    }
}

#[test]
fn gauge_transform_round_trip_restores_fields() {
    let consts = PhysicalConstants::default();
    let mut r = common::rng(21);
    let a = PotentialField::coulomb(0.3, &consts).unwrap();
    let psi: Arc<dyn ScalarWave> = Arc::new(kg_coulomb_1s(0.3, &consts).unwrap());
    let chi = common::random_quadratic_gauge(&mut r);
    let (a1, psi1) = gauge_transform(&a, psi.clone(), Arc::new(chi.clone()), &consts);
    let (a2, psi2) = gauge_transform(&a1, psi1, Arc::new(chi.negated()), &consts);
    for e in common::shell_cloud(22, 100, 0.5, 5.0) {
        let da = (a2.value(&e).unwrap() - a.value(&e).unwrap()).max_abs();
        let v = psi.value(&e).unwrap();
        let dpsi = (psi2.value(&e).unwrap() - v).norm() / v.norm();
        assert!(da < 1e-12 && dpsi < 1e-12, "at {e}: ΔA {da}, Δψ {dpsi}");
    }
}

#[test]
fn field_strength_is_gauge_invariant_for_cubic_gauges() {
    let consts = PhysicalConstants::default();
    let a = PotentialField::coulomb(0.4, &consts).unwrap();
    let psi: Arc<dyn ScalarWave> = Arc::new(plane_wave([0.1, 0.0, 0.0], &consts).unwrap());
    let mut r = common::rng(31);
    for _ in 0..10 {
        let chi = cubic_gauge(&mut r);
        let (a2, _) = gauge_transform(&a, psi.clone(), Arc::new(chi), &consts);
        for e in common::shell_cloud(32, 50, 0.5, 5.0) {
            let f1 = field_strength(&a, &e, DerivativeMethod::Analytic, 1.0).unwrap();
            let f2 = field_strength(&a2, &e, DerivativeMethod::Analytic, 1.0).unwrap();
            assert!((f1 - f2).max_abs() < 1e-10);
        }
    }
}

#[test]
fn coulomb_is_singular_only_at_origin() {
    let consts = PhysicalConstants::default();
    let a = PotentialField::coulomb(0.4, &consts).unwrap();
    assert_eq!(a.singular_points(), vec![[0.0, 0.0, 0.0]]);
    assert!(a.value(&velfield::Event::ORIGIN).is_err());
    assert!(PotentialField::coulomb(1.0, &consts).is_err());
    assert!(PotentialField::coulomb(0.0, &consts).is_err());
}
