//! What the two hypotheses of the product construction buy: families that
//! break monotonicity or outpace the vertical scale `c` are caught by the
//! checks, and a forced build shows the triangle inequality failing.
//!
//! ```bash
//! cargo run --example product_conditions
//! ```

use std::sync::Arc;

use gh_realize::prelude::*;

pub fn main() -> Result<()> {
    let grid = ParamGrid::uniform(0.0, 1.0, 11)?;

    // |z0 z1|_t = 1 + sin(πt): rises then falls
    let bump = FnFamily::new(2, 0.0, 1.0, |_, _, t| 1.0 + (std::f64::consts::PI * t).sin())?;
    let mono = check_monotone_condition(&bump, &grid, DEFAULT_TOL);
    println!("bump family monotone: {} (violation {:.3} at {:?})", mono.ok, mono.violation, mono.witness);

    // a shrinking pair: |z0 z1|_t = 2 - t, slope 1, so c must be at least ½
    let shrink = FnFamily::new(2, 0.0, 1.0, |_, _, t| 2.0 - t)?;
    for c in [0.5, 0.1] {
        let lip = check_lipschitz_condition(&shrink, c, &grid, DEFAULT_TOL);
        println!("c = {c}: lipschitz {} (deficit {:.3}, worst slope {:.3})", lip.ok, lip.deficit, lip.max_slope);
    }

    let family: Arc<dyn InterpolationFamily> = Arc::new(shrink);
    match build_product(family.clone(), 0.1, grid.clone(), BuildOptions::default()) {
        Err(e) => println!("build refused: {e}"),
        Ok(_) => unreachable!("c = 0.1 is too small"),
    }
    let forced = build_product(family.clone(), 0.1, grid.clone(), BuildOptions { force: true, ..Default::default() })?;
    let bad = verify_product(&forced, DEFAULT_TOL);
    println!(
        "forced c = 0.1: triangle violation {:.3} at {:?}, certified {}",
        bad.max_triangle_violation, bad.triangle_witness, bad.certified
    );
    let good = verify_product(&build_product(family, 0.5, grid, BuildOptions::default())?, DEFAULT_TOL);
    println!("c = 0.5: triangle violation {:e}, certified {}", good.max_triangle_violation, good.certified);
    Ok(())
}
