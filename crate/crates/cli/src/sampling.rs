use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use velfield::Event;

use crate::config::Cloud;

/// Events of a sample cloud, in a fixed order.
///
/// Rays run along the x1 axis. Random balls are uniform in the 4-ball of the
/// storage coordinates `(x1, x2, x3, t)`, drawn by rejection from the cube.
pub fn cloud_events(cloud: &Cloud) -> Vec<Event> {
    match cloud {
        Cloud::Ray { r_min, r_max, count, t } => (0..*count)
            .map(|i| {
                let s = if *count == 1 {
                    *r_min
                } else {
                    r_min + (r_max - r_min) * i as f64 / (*count - 1) as f64
                };
                Event::new(s, 0.0, 0.0, *t)
            })
            .collect(),
        Cloud::RandomBall { center, radius, count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut out = Vec::with_capacity(*count);
            while out.len() < *count {
                let d: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
                if d.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
                    out.push(Event::from_array(std::array::from_fn(|k| center[k] + radius * d[k])));
                }
            }
            out
        }
        Cloud::Events { events } => events.iter().map(|e| Event::from_array(*e)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ray_endpoints() {
        let e = cloud_events(&Cloud::Ray {
            r_min: 0.5,
            r_max: 5.0,
            count: 50,
            t: 0.0,
        });
        assert_eq!(e.len(), 50);
        assert_eq!(e[0].x1, 0.5);
        assert_eq!(e[49].x1, 5.0);
    }

    #[test]
    fn ball_is_seeded_and_bounded() {
        let cloud = Cloud::RandomBall {
            center: [1.0, 0.0, 0.0, 0.0],
            radius: 2.0,
            count: 200,
            seed: 9,
        };
        let a = cloud_events(&cloud);
        assert_eq!(a, cloud_events(&cloud));
        assert!(a.iter().all(|e| {
            let d = [e.x1 - 1.0, e.x2, e.x3, e.t];
            d.iter().map(|x| x * x).sum::<f64>() <= 4.0 + 1e-12
        }));
    }
}
