//! Realizing a geodesic inside the product space `R × [0, 1]` and reading
//! the certificate; the product is saved and re-verified from disk.
//!
//! ```bash
//! cargo run --example realize_geodesic
//! ```

use gh_realize::io::{parse_product, product_to_json};
use gh_realize::prelude::*;

pub fn main() -> Result<()> {
    let x = validate_metric(
        &[vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]],
        MetricKind::Metric,
        DEFAULT_TOL,
    )?;
    let y = validate_metric(&[vec![0.0, 1.5], vec![1.5, 0.0]], MetricKind::Metric, DEFAULT_TOL)?;
    let gh = gh_distance_exact(&x, &y)?;

    let grid = ParamGrid::uniform(0.0, 1.0, 11)?;
    let real = realize_geodesic(&x, &y, &gh.witness, grid, None, BuildOptions::default())?;
    let prod = &real.product;
    let rep = &real.report;
    println!("d_GH = {}, c = {}, {} product points", gh.value, prod.c(), prod.len());
    println!("max triangle violation      {:e}", rep.max_triangle_violation);
    println!("slice Hausdorff max error   {:e}", rep.slice_hausdorff_max_error);
    println!("slice min-distance error    {:e}", rep.slice_min_distance_max_error);
    println!("worst slope {} vs 2c = {}", rep.max_slope, 2.0 * prod.c());
    for l in [2, 5, 10] {
        println!("d_H(Z_0, Z_{}) = {:.6}", prod.grid().values()[l], prod.slice_hausdorff(0, l));
    }

    let saved = product_to_json(prod)?;
    let reloaded = parse_product(&saved)?;
    let again = verify_product(&reloaded, DEFAULT_TOL);
    println!("reloaded ({} bytes): certified = {}", saved.len(), again.certified);
    Ok(())
}
