//! Shared fixtures for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sigframes::{log_signature, LieCoordinates, PiecewiseLinearPath};

/// Random walk with `segments` steps in `[-1, 1]^dim`.
pub fn random_walk(dim: usize, segments: usize, seed: u64) -> PiecewiseLinearPath<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = vec![0.0; dim];
    let mut points = vec![p.clone()];
    for _ in 0..segments {
        for x in &mut p {
            *x += rng.random_range(-1.0..1.0);
        }
        points.push(p.clone());
    }
    PiecewiseLinearPath::new(points).expect("nonempty path")
}

pub fn random_coordinates(dim: usize, level: usize, seed: u64) -> LieCoordinates<f64> {
    log_signature(&random_walk(dim, 8, seed), level).expect("log-signature of a walk")
}
