//! Exact and heuristic Gromov-Hausdorff distances with witnesses.
//!
//! ```bash
//! cargo run --example gh_distance
//! ```

use gh_realize::prelude::*;

fn planar(points: &[(f64, f64)]) -> Result<FiniteMetricSpace> {
    let matrix: Vec<Vec<f64>> =
        points.iter().map(|a| points.iter().map(|b| (a.0 - b.0).hypot(a.1 - b.1)).collect()).collect();
    validate_metric(&matrix, MetricKind::Metric, DEFAULT_TOL)
}

pub fn main() -> Result<()> {
    let triangle = planar(&[(0.0, 0.0), (1.0, 0.0), (0.5, 0.9)])?;
    let square = planar(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])?;

    println!("correspondences between 3 and 4 points: {}", enumerate_correspondences(3, 4)?.count());

    let exact = gh_distance_exact(&triangle, &square)?;
    println!("exact d_GH = {:.6} via {:?}", exact.value, exact.witness.pairs());
    println!("distortion of witness = {:.6}", distortion(&exact.witness, &triangle, &square)?);
    println!("diameter lower bound  = {:.6}", gh_lower_bound(&triangle, &square));

    let heuristic = gh_distance_heuristic(&triangle, &square, HeuristicConfig::default());
    println!("heuristic d_GH <= {:.6} (certified: {})", heuristic.value, heuristic.is_certified_optimal);

    // past the exhaustive cap only the heuristic applies
    let ring: Vec<(f64, f64)> = (0..8)
        .map(|k| {
            let a = std::f64::consts::TAU * k as f64 / 8.0;
            (a.cos(), a.sin())
        })
        .collect();
    let big = planar(&ring)?;
    match gh_distance_exact(&big, &square) {
        Err(e) => println!("exact refused: {e}"),
        Ok(r) => println!("exact: {}", r.value),
    }
    let h = gh_distance_heuristic(&big, &square, HeuristicConfig { iterations: 500, seed: 1, restarts: 16 });
    println!("8-gon vs square: {:.6} <= d_GH <= {:.6}", gh_lower_bound(&big, &square), h.value);
    Ok(())
}
