//! Parametric worldlines, boosts along x1, and time-slice pierce points.
//!
//! Worldlines are parametrized by an arbitrary λ rather than proper time, so
//! curves with spacelike arcs (such as a circle in the x1–x4 plane) can be
//! represented and classified sample by sample.

use std::f64::consts::TAU;
use std::fmt;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::four::{boost_x1, contract, lorentz_factor, Event, FourVector, C64, I};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WorldlineKind {
    /// `X(λ) = x₀ + λ(v, 1)`.
    Line { origin: Event, velocity: [f64; 3] },
    /// `(R cos ωλ, R sin ωλ, 0, t = λ)`.
    Helix { radius: f64, omega: f64 },
    /// `(R cos λ, 0, 0, ct = R sin λ)`.
    CircleX1X4 { radius: f64 },
}

impl WorldlineKind {
    pub fn tag(&self) -> &'static str {
        match self {
            WorldlineKind::Line { .. } => "line",
            WorldlineKind::Helix { .. } => "helix",
            WorldlineKind::CircleX1X4 { .. } => "circle-x1x4",
        }
    }

    /// A natural parameter interval: one turn for closed curves, `[-1, 1]` for lines.
    pub fn default_range(&self) -> (f64, f64) {
        match self {
            WorldlineKind::Line { .. } => (-1.0, 1.0),
            WorldlineKind::Helix { omega, .. } => (0.0, TAU / omega.abs().max(f64::MIN_POSITIVE)),
            WorldlineKind::CircleX1X4 { .. } => (0.0, TAU),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Worldline {
    pub kind: WorldlineKind,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Boost speeds along x1, applied in order.
    pub boosts: Vec<f64>,
    pub reversed: bool,
    pub c: f64,
}

pub fn make_worldline(kind: WorldlineKind, lambda_min: f64, lambda_max: f64, c: f64) -> Result<Worldline> {
    let invalid = |msg: &str| Err(Error::InvalidParameter(msg.to_string()));
    if !(lambda_min.is_finite() && lambda_max.is_finite() && lambda_min < lambda_max) {
        return invalid("parameter interval must be finite and non-empty");
    }
    if !(c.is_finite() && c > 0.0) {
        return invalid("c must be positive");
    }
    match kind {
        WorldlineKind::Line { origin, velocity } => {
            if !origin.is_finite() || !velocity.iter().all(|v| v.is_finite()) {
                return invalid("line origin and velocity must be finite");
            }
        }
        WorldlineKind::Helix { radius, omega } => {
            if !(radius > 0.0 && radius.is_finite() && omega.is_finite()) {
                return invalid("helix needs R > 0 and finite ω");
            }
        }
        WorldlineKind::CircleX1X4 { radius } => {
            if !(radius > 0.0 && radius.is_finite()) {
                return invalid("circle needs R > 0");
            }
        }
    }
    Ok(Worldline {
        kind,
        lambda_min,
        lambda_max,
        boosts: Vec::new(),
        reversed: false,
        c,
    })
}

/// Boosts every event of `w` along x1 with speed `v`.
pub fn boost_worldline(w: &Worldline, v: f64) -> Result<Worldline> {
    lorentz_factor(v, w.c)?;
    let mut out = w.clone();
    out.boosts.push(v);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpeedClass {
    Timelike,
    Spacelike,
    Null,
}

impl fmt::Display for SpeedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpeedClass::Timelike => "timelike",
            SpeedClass::Spacelike => "spacelike",
            SpeedClass::Null => "null",
        })
    }
}

/// Relative size of `dX·dX` below which a tangent counts as null.
pub const NULL_TOLERANCE: f64 = 1e-12;

impl Worldline {
    fn base_parameter(&self, lambda: f64) -> f64 {
        if self.reversed {
            self.lambda_min + self.lambda_max - lambda
        } else {
            lambda
        }
    }

    /// Copy traversed in the opposite direction over the same interval.
    pub fn reversed(&self) -> Self {
        let mut w = self.clone();
        w.reversed = !w.reversed;
        w
    }

    fn base_event(&self, s: f64) -> Event {
        let c = self.c;
        match self.kind {
            WorldlineKind::Line { origin, velocity } => Event::new(
                origin.x1 + s * velocity[0],
                origin.x2 + s * velocity[1],
                origin.x3 + s * velocity[2],
                origin.t + s,
            ),
            WorldlineKind::Helix { radius, omega } => {
                Event::new(radius * (omega * s).cos(), radius * (omega * s).sin(), 0.0, s)
            }
            WorldlineKind::CircleX1X4 { radius } => Event::new(radius * s.cos(), 0.0, 0.0, radius * s.sin() / c),
        }
    }

    /// `(dx1, dx2, dx3, dt)/ds` in the unboosted frame.
    fn base_tangent(&self, s: f64) -> [f64; 4] {
        match self.kind {
            WorldlineKind::Line { velocity, .. } => [velocity[0], velocity[1], velocity[2], 1.0],
            WorldlineKind::Helix { radius, omega } => [
                -radius * omega * (omega * s).sin(),
                radius * omega * (omega * s).cos(),
                0.0,
                1.0,
            ],
            WorldlineKind::CircleX1X4 { radius } => {
                [-radius * s.sin(), 0.0, 0.0, radius * s.cos() / self.c]
            }
        }
    }

    pub fn event(&self, lambda: f64) -> Event {
        let mut e = self.base_event(self.base_parameter(lambda));
        for &v in &self.boosts {
            e = boost_x1(&e, v, self.c).expect("boost speeds validated on construction");
        }
        e
    }

    /// `(dx1, dx2, dx3, dt)/dλ`, boosted like coordinate differences.
    pub fn coordinate_tangent(&self, lambda: f64) -> [f64; 4] {
        let mut d = self.base_tangent(self.base_parameter(lambda));
        if self.reversed {
            d = d.map(|x| -x);
        }
        let c = self.c;
        for &v in &self.boosts {
            let gamma = lorentz_factor(v, c).expect("boost speeds validated on construction");
            d = [gamma * (d[0] - v * d[3]), d[1], d[2], gamma * (d[3] - v * d[0] / (c * c))];
        }
        d
    }

    /// `dX_μ/dλ` with `dx_4 = ic dt`.
    pub fn tangent(&self, lambda: f64) -> FourVector {
        let d = self.coordinate_tangent(lambda);
        FourVector::new(d[0].into(), d[1].into(), d[2].into(), I * (self.c * d[3]))
    }
}

/// Classifies the tangent at λ by the sign of `dX_μ dX_μ`.
pub fn classify_speed(w: &Worldline, lambda: f64) -> Result<SpeedClass> {
    let d = w.coordinate_tangent(lambda);
    let spatial = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    let temporal = (w.c * d[3]).powi(2);
    let scale = spatial + temporal;
    if scale == 0.0 {
        return Err(Error::DegenerateParameter { lambda });
    }
    let s = spatial - temporal;
    Ok(if s.abs() < NULL_TOLERANCE * scale {
        SpeedClass::Null
    } else if s < 0.0 {
        SpeedClass::Timelike
    } else {
        SpeedClass::Spacelike
    })
}

/// Four-velocity `dX/dτ` at λ, future-pointing; only defined on timelike samples.
pub fn four_velocity(w: &Worldline, lambda: f64) -> Result<Option<FourVector>> {
    if classify_speed(w, lambda)? != SpeedClass::Timelike {
        return Ok(None);
    }
    let tangent = w.tangent(lambda);
    let s = contract(&tangent, &tangent).re;
    let dt = w.coordinate_tangent(lambda)[3];
    let dtau = dt.signum() * (-s).sqrt() / w.c;
    Ok(Some(tangent * (1.0 / dtau)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiercePoint {
    pub event: Event,
    pub lambda: f64,
    pub class: SpeedClass,
    /// Present only for timelike crossings.
    pub velocity: Option<FourVector>,
    /// The worldline touches the slice without crossing it.
    pub tangent: bool,
}

pub const DEFAULT_GRID_CELLS: usize = 4096;
const BISECTION_WIDTH: f64 = 1e-12;
const TANGENT_TOLERANCE: f64 = 1e-10;

/// Intersections of `w` with the slice `t = t0`, on the default grid.
pub fn pierce_points(w: &Worldline, t0: f64) -> Result<Vec<PiercePoint>> {
    pierce_points_with_grid(w, t0, DEFAULT_GRID_CELLS)
}

/// Sign-change bracketing on a uniform grid, refined by bisection.
///
/// Crossings closer together than one grid cell are found only when `t(λ)`
/// has a local extremum between grid nodes that dips across `t0`; pairs of
/// roots inside a single monotone cell are missed.
pub fn pierce_points_with_grid(w: &Worldline, t0: f64, cells: usize) -> Result<Vec<PiercePoint>> {
    if cells < 2 {
        return Err(Error::InvalidParameter("pierce grid needs at least two cells".into()));
    }
    let g = |lambda: f64| w.event(lambda).t - t0;
    let step = (w.lambda_max - w.lambda_min) / cells as f64;
    let grid: Vec<f64> = (0..=cells)
        .map(|i| if i == cells { w.lambda_max } else { w.lambda_min + i as f64 * step })
        .collect();
    let values: Vec<f64> = grid.iter().map(|&l| g(l)).collect();

    let mut roots: Vec<(f64, bool)> = Vec::new();
    for i in 0..=cells {
        let gi = values[i];
        if gi == 0.0 {
            let before = if i > 0 { values[i - 1] } else { 0.0 };
            let after = if i < cells { values[i + 1] } else { 0.0 };
            let tangent = before * after > 0.0;
            roots.push((grid[i], tangent));
            continue;
        }
        if i < cells && gi * values[i + 1] < 0.0 {
            roots.push((bisect(&g, grid[i], grid[i + 1]), false));
        }
        if i > 0 && i < cells {
            let (prev, next) = (values[i - 1], values[i + 1]);
            let same_side = prev * gi > 0.0 && next * gi > 0.0;
            if same_side && gi.abs() <= prev.abs() && gi.abs() <= next.abs() {
                let sign = gi.signum();
                let toward_slice = |l: f64| sign * g(l);
                let (lmin, hmin) = golden_minimum(&toward_slice, grid[i - 1], grid[i + 1]);
                if hmin < 0.0 {
                    roots.push((bisect(&g, grid[i - 1], lmin), false));
                    roots.push((bisect(&g, lmin, grid[i + 1]), false));
                } else if hmin < TANGENT_TOLERANCE {
                    roots.push((lmin, true));
                }
            }
        }
    }
    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    roots.dedup_by(|b, a| (a.0 - b.0).abs() < 1e-9);

    roots
        .into_iter()
        .map(|(lambda, tangent)| {
            let class = classify_speed(w, lambda)?;
            let velocity = four_velocity(w, lambda)?;
            Ok(PiercePoint {
                event: w.event(lambda),
                lambda,
                class,
                velocity,
                tangent,
            })
        })
        .collect()
}

fn bisect(g: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut glo = g(lo);
    while (hi - lo).abs() > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if gm * glo < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            glo = gm;
        }
    }
    0.5 * (lo + hi)
}

fn golden_minimum(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if (b - a).abs() < BISECTION_WIDTH {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Writes pierce points as CSV with header `lambda,x1,x2,x3,t,class`.
pub fn write_pierce_csv<W: Write>(points: &[PiercePoint], mut out: W) -> io::Result<()> {
    writeln!(out, "lambda,x1,x2,x3,t,class")?;
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            p.lambda, p.event.x1, p.event.x2, p.event.x3, p.event.t, p.class
        )?;
    }
    Ok(())
}

/// `|u_μ u_μ + c²|` for a pierce point's velocity, if it has one.
pub fn mass_shell_gap(p: &PiercePoint, c: f64) -> Option<f64> {
    p.velocity.map(|u| (contract(&u, &u) + C64::from(c * c)).norm())
}
