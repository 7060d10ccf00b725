//! Shared setup for the criterion benches.

use isostab::{derive_seed, perturbed_isometry, random_orthogonal, random_point_cloud, PointMap};

/// A representative certification input: n = 4, radius 2, 20 extra points,
/// distortion steered to half the admissible budget.
pub fn benchmark_map(seed: u64) -> PointMap {
    let cloud = random_point_cloud(4, 2.0, 20, derive_seed(seed, 1)).unwrap();
    let q0 = random_orthogonal(4, derive_seed(seed, 2)).unwrap();
    perturbed_isometry(&cloud, &q0, 1.0 / 180.0, derive_seed(seed, 3)).unwrap()
}
