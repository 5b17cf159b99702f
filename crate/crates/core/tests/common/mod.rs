#![allow(dead_code)]

use gh_realize::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Euclidean distances of `n` uniform points in the unit square.
pub fn planar_space(rng: &mut impl Rng, n: usize) -> FiniteMetricSpace {
    let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())).collect();
    let matrix: Vec<Vec<f64>> =
        pts.iter().map(|a| pts.iter().map(|b| (a.0 - b.0).hypot(a.1 - b.1)).collect()).collect();
    validate_metric(&matrix, MetricKind::Pseudometric, DEFAULT_TOL).expect("planar distances are a metric")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent brute force: every subset of X × Y with surjective
/// projections, distortion by the definition.
pub fn naive_gh(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> f64 {
    let (m, n) = (x.len(), y.len());
    let mut best = f64::INFINITY;
    for mask in 1u64..(1 << (m * n)) {
        let pairs: Vec<(usize, usize)> = (0..m * n).filter(|p| mask >> p & 1 == 1).map(|p| (p / n, p % n)).collect();
        let onto_x = (0..m).all(|i| pairs.iter().any(|&(a, _)| a == i));
        let onto_y = (0..n).all(|j| pairs.iter().any(|&(_, b)| b == j));
        if !(onto_x && onto_y) {
            continue;
        }
        let mut dis = 0.0f64;
        for &(a, b) in &pairs {
            for &(a2, b2) in &pairs {
                dis = dis.max((x.distance(a, a2) - y.distance(b, b2)).abs());
            }
        }
        best = best.min(dis);
    }
    0.5 * best
}

pub fn naive_correspondence_count(m: usize, n: usize) -> usize {
    (1u64..(1 << (m * n)))
        .filter(|mask| {
            (0..m).all(|i| (0..n).any(|j| mask >> (i * n + j) & 1 == 1))
                && (0..n).all(|j| (0..m).any(|i| mask >> (i * n + j) & 1 == 1))
        })
        .count()
}
