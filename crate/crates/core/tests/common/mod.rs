#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use velfield::fields::QuadraticGauge;
use velfield::Event;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Events uniformly inside the box `[-half, half]^4`.
pub fn box_cloud(seed: u64, count: usize, half: f64) -> Vec<Event> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| Event::new(
            r.gen_range(-half..half),
            r.gen_range(-half..half),
            r.gen_range(-half..half),
            r.gen_range(-half..half),
        ))
        .collect()
}

/// Events with spatial radius in `[r_min, r_max]` and `|t| ≤ 1`.
pub fn shell_cloud(seed: u64, count: usize, r_min: f64, r_max: f64) -> Vec<Event> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let radius = r.gen_range(r_min..r_max);
            let cos_theta: f64 = r.gen_range(-1.0..1.0);
            let phi = r.gen_range(0.0..std::f64::consts::TAU);
            let sin_theta = (1.0 - cos_theta * cos_theta).sqrt();
            Event::new(
                radius * sin_theta * phi.cos(),
                radius * sin_theta * phi.sin(),
                radius * cos_theta,
                r.gen_range(-1.0..1.0),
            )
        })
        .collect()
}

/// Evenly spaced points on the x1 axis, `t = 0`.
pub fn ray(r_min: f64, r_max: f64, count: usize) -> Vec<Event> {
    (0..count)
        .map(|i| {
            let s = r_min + (r_max - r_min) * i as f64 / (count - 1) as f64;
            Event::new(s, 0.0, 0.0, 0.0)
        })
        .collect()
}

pub fn random_quadratic_gauge(r: &mut ChaCha8Rng) -> QuadraticGauge {
    let mut g = QuadraticGauge::zero();
    g.constant = r.gen_range(-1.0..1.0);
    for a in 0..4 {
        g.linear[a] = r.gen_range(-1.0..1.0);
        for b in a..4 {
            g.quadratic[a][b] = r.gen_range(-0.5..0.5);
        }
    }
    g
}
