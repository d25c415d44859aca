use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GadgetError;
use crate::geom::{rat, Instance, Point, Rational};

/// `n` points with coordinates drawn uniformly from the multiples of 1/10 in
/// `[0, box_size]`. The same seed always yields the same instance.
pub fn gen_random(
    n: usize,
    k: usize,
    r_min: Rational,
    r_max: Rational,
    box_size: u32,
    seed: u64,
) -> Result<Instance, GadgetError> {
    if n == 0 {
        return Err(GadgetError::BadParameter("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let steps = 10 * i64::from(box_size);
    let points = (0..n)
        .map(|id| {
            let x = rng.random_range(0..=steps);
            let y = rng.random_range(0..=steps);
            Point::new(id, rat(x, 10), rat(y, 10))
        })
        .collect();
    Instance::new(points, r_min, r_max, k).map_err(|e| GadgetError::BadParameter(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::int;

    #[test]
    fn deterministic_and_seed_sensitive() {
        let a = gen_random(6, 1, rat(1, 2), int(1), 5, 7).unwrap();
        let b = gen_random(6, 1, rat(1, 2), int(1), 5, 7).unwrap();
        assert_eq!(a, b);
        let differing = (0..100u64)
            .filter(|&s| gen_random(6, 1, rat(1, 2), int(1), 5, s) != gen_random(6, 1, rat(1, 2), int(1), 5, s + 1000))
            .count();
        assert!(differing >= 99);
        assert_eq!(gen_random(1, 0, int(1), int(1), 5, 0).unwrap().n(), 1);
        assert!(gen_random(0, 0, int(1), int(1), 5, 0).is_err());
    }
}
