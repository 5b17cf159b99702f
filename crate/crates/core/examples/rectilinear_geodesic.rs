//! Walking along a rectilinear geodesic and checking that it is shortest:
//! the exact distance between slices is `|t - s|` times the distance between
//! the endpoints.
//!
//! ```bash
//! cargo run --example rectilinear_geodesic
//! ```

use gh_realize::prelude::*;

pub fn main() -> Result<()> {
    let x = validate_metric(
        &[vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]],
        MetricKind::Metric,
        DEFAULT_TOL,
    )?;
    let y = validate_metric(&[vec![0.0, 2.0], vec![2.0, 0.0]], MetricKind::Metric, DEFAULT_TOL)?;

    let gh = gh_distance_exact(&x, &y)?;
    println!("d_GH = {} with R = {:?}", gh.value, gh.witness.pairs());

    let geodesic = RectilinearGeodesic::new(&gh.witness, &x, &y)?;
    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let slice = geodesic.slice(t)?.to_space();
        println!("{}: kind {}, matrix {:?}", slice.name(), slice.kind(), slice.to_matrix());
    }

    for (t, s) in [(0.0, 1.0), (0.25, 0.75), (0.5, 1.0)] {
        let check = slice_gh_check(&gh.witness, &x, &y, t, s)?;
        println!("d_GH(R_{t}, R_{s}) = {:.6}, expected {:.6}", check.actual, check.expected);
    }
    Ok(())
}
