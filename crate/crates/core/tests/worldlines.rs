use proptest::prelude::*;
use velfield::worldline::{
    boost_worldline, classify_speed, four_velocity, make_worldline, mass_shell_gap, pierce_points, write_pierce_csv,
    SpeedClass, Worldline, WorldlineKind,
};
use velfield::four::lorentz_factor;
use velfield::{contract, Event};

fn timelike_line(v: [f64; 3]) -> Worldline {
    let kind = WorldlineKind::Line { origin: Event::ORIGIN, velocity: v };
    make_worldline(kind, -20.0, 20.0, 1.0).unwrap()
}

fn interval(a: &Event, b: &Event, c: f64) -> f64 {
    (b.x1 - a.x1).powi(2) + (b.x2 - a.x2).powi(2) + (b.x3 - a.x3).powi(2) - c * c * (b.t - a.t).powi(2)
}

fn any_kind() -> impl Strategy<Value = WorldlineKind> {
    prop_oneof![
        (prop::array::uniform3(-0.9f64..0.9)).prop_map(|v| WorldlineKind::Line {
            origin: Event::ORIGIN,
            velocity: v.map(|x| x / 3f64.sqrt()),
        }),
        (0.1f64..2.0, 0.5f64..6.0).prop_map(|(radius, omega)| WorldlineKind::Helix { radius, omega }),
        (0.2f64..2.0).prop_map(|radius| WorldlineKind::CircleX1X4 { radius }),
    ]
}

#[test]
fn circle_slice_has_two_crossings() {
    let w = make_worldline(WorldlineKind::CircleX1X4 { radius: 1.0 }, 0.0, std::f64::consts::TAU, 1.0).unwrap();
    let mut xs: Vec<f64> = pierce_points(&w, 0.5).unwrap().iter().map(|p| p.event.x1).collect();
    xs.sort_by(f64::total_cmp);
    assert_eq!(xs.len(), 2);
    assert!((xs[0] + 0.75f64.sqrt()).abs() < 1e-9 && (xs[1] - 0.75f64.sqrt()).abs() < 1e-9);
    let top = pierce_points(&w, 1.0).unwrap();
    assert_eq!(top.len(), 1);
    assert!(top[0].tangent && top[0].event.x1.abs() < 1e-6);
    assert_eq!(classify_speed(&w, 0.0).unwrap(), SpeedClass::Timelike);
    assert_eq!(classify_speed(&w, std::f64::consts::FRAC_PI_2).unwrap(), SpeedClass::Spacelike);
}

#[test]
fn boosted_timelike_lines_cross_once() {
    let w = timelike_line([0.2, -0.1, 0.3]);
    for k in 0..20 {
        let v = -0.99 + 1.98 * k as f64 / 19.0;
        let b = boost_worldline(&w, v).unwrap();
        for t0 in [-3.0, 0.0, 1.7] {
            let points = pierce_points(&b, t0).unwrap();
            assert_eq!(points.len(), 1, "v = {v}, t0 = {t0}");
            let p = &points[0];
            assert!((p.event.t - t0).abs() < 1e-10);
            assert_eq!(p.class, SpeedClass::Timelike);
            assert!(mass_shell_gap(p, 1.0).unwrap() < 1e-10);
        }
    }
}

#[test]
fn velocity_addition_under_boost() {
    let u = 0.6;
    let v = 0.3;
    let b = boost_worldline(&timelike_line([u, 0.0, 0.0]), v).unwrap();
    let (e0, e1) = (b.event(0.0), b.event(1.0));
    let speed = (e1.x1 - e0.x1) / (e1.t - e0.t);
    assert!((speed - (u - v) / (1.0 - u * v)).abs() < 1e-12);
    assert_eq!(boost_worldline(&b, 0.0).unwrap().event(0.7), b.event(0.7));
    assert!(boost_worldline(&b, 1.0).is_err());
}

#[test]
fn null_line_is_null() {
    let w = timelike_line([1.0, 0.0, 0.0]);
    for l in [-1.0, 0.0, 3.0] {
        assert_eq!(classify_speed(&w, l).unwrap(), SpeedClass::Null);
        assert!(four_velocity(&w, l).unwrap().is_none());
    }
}

#[test]
fn csv_export_has_fixed_header() {
    let w = make_worldline(WorldlineKind::CircleX1X4 { radius: 1.0 }, 0.0, std::f64::consts::TAU, 1.0).unwrap();
    let mut buf = Vec::new();
    write_pierce_csv(&pierce_points(&w, 0.5).unwrap(), &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "lambda,x1,x2,x3,t,class");
    assert_eq!(lines.len(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reversal_keeps_pierce_count(kind in any_kind(), t0 in -1.5f64..1.5, v in -0.9f64..0.9) {
        let (lo, hi) = kind.default_range();
        let w = boost_worldline(&make_worldline(kind, lo, hi, 1.0).unwrap(), v).unwrap();
        let forward = pierce_points(&w, t0).unwrap();
        let backward = pierce_points(&w.reversed(), t0).unwrap();
        prop_assert_eq!(forward.len(), backward.len());
        for p in forward.iter().chain(&backward) {
            prop_assert!((p.event.t - t0).abs() < 1e-10);
            if let Some(gap) = mass_shell_gap(p, 1.0) {
                prop_assert!(gap < 1e-10);
            }
        }
    }

    #[test]
    fn boosts_preserve_intervals(kind in any_kind(), v in -0.95f64..0.95, l1 in 0.0f64..1.0, l2 in 0.0f64..1.0) {
        let (lo, hi) = kind.default_range();
        let w = make_worldline(kind, lo, hi, 1.0).unwrap();
        let b = boost_worldline(&w, v).unwrap();
        let (a, c) = (lo + l1 * (hi - lo), lo + l2 * (hi - lo));
        let before = interval(&w.event(a), &w.event(c), 1.0);
        let after = interval(&b.event(a), &b.event(c), 1.0);
        prop_assert!((before - after).abs() < 1e-12 * (1.0 + before.abs()) * lorentz_factor(v, 1.0).unwrap().powi(2));
    }

    #[test]
    fn proper_velocity_sits_on_mass_shell(kind in any_kind(), s in 0.0f64..1.0, v in -0.9f64..0.9) {
        let (lo, hi) = kind.default_range();
        let w = boost_worldline(&make_worldline(kind, lo, hi, 1.0).unwrap(), v).unwrap();
        let lambda = lo + s * (hi - lo);
        if let Some(u) = four_velocity(&w, lambda).unwrap() {
            prop_assert!((contract(&u, &u) + 1.0).norm() < 1e-10);
        }
    }
}
