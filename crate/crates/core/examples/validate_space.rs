//! Validating distance matrices and measuring Hausdorff distances between
//! subsets.
//!
//! ```bash
//! cargo run --example validate_space
//! ```

use gh_realize::prelude::*;

pub fn main() -> Result<()> {
    // four points on a line at 0, 1, 3, 6
    let coords = [0.0f64, 1.0, 3.0, 6.0];
    let matrix: Vec<Vec<f64>> = coords.iter().map(|a| coords.iter().map(|b| (a - b).abs()).collect()).collect();
    let line = validate_metric(&matrix, MetricKind::Metric, DEFAULT_TOL)?;
    println!("line: {} points, kind {}, diameter {}", line.len(), line.kind(), line.diameter());

    let left = PointSubset::new(&line, [0, 1])?;
    let right = PointSubset::new(&line, [2, 3])?;
    println!("|p0 right|  = {}", point_set_distance(&line, 0, &right)?);
    println!("|left right| = {}", set_set_distance(&line, &left, &right)?);
    println!("d_H(left, right) = {}", hausdorff_distance(&line, &left, &right)?);

    // a matrix that breaks the triangle inequality is rejected with a witness
    let broken = [vec![0.0, 1.0, 3.0], vec![1.0, 0.0, 1.0], vec![3.0, 1.0, 0.0]];
    match validate_metric(&broken, MetricKind::Metric, DEFAULT_TOL) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("3 > 1 + 1"),
    }

    // zero distance between distinct points is fine for a pseudometric
    let glued = [vec![0.0, 0.0, 2.0], vec![0.0, 0.0, 2.0], vec![2.0, 2.0, 0.0]];
    let pseudo = validate_metric(&glued, MetricKind::Pseudometric, DEFAULT_TOL)?;
    println!("glued: kind {}", pseudo.kind());
    Ok(())
}
