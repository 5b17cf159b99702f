//! Gromov-Hausdorff distances between finite metric spaces, rectilinear
//! geodesics between them, and a realization of each geodesic as a
//! Hausdorff-shortest curve of slices inside an explicit product space.
//!
//! The pieces, bottom up:
//!
//! * [`space`]: validated finite (pseudo)metric spaces and the Hausdorff
//!   distance between subsets;
//! * [`correspondence`]: relations, distortion, exact (branch-and-bound) and
//!   heuristic GH distance with witness correspondences;
//! * [`geodesic`]: the slices `R_t` with distance `(1-t)|xx'| + t|yy'|`;
//! * [`realization`]: the product metric on `Z × [a,b]`, its hypotheses and
//!   a full numerical certificate;
//! * [`io`] and [`cli`]: file formats and the `ghr` front end.
//!
//! ```
//! use gh_realize::prelude::*;
//!
//! let x = validate_metric(&[vec![0.0, 2.0], vec![2.0, 0.0]], MetricKind::Metric, DEFAULT_TOL)?;
//! let y = validate_metric(&[vec![0.0, 1.0], vec![1.0, 0.0]], MetricKind::Metric, DEFAULT_TOL)?;
//! let gh = gh_distance_exact(&x, &y)?;
//! assert_eq!(gh.value, 0.5);
//!
//! let grid = ParamGrid::uniform(0.0, 1.0, 11)?;
//! let real = realize_geodesic(&x, &y, &gh.witness, grid, None, BuildOptions::default())?;
//! assert!(real.report.certified);
//! # Ok::<(), gh_realize::Error>(())
//! ```

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod correspondence;
mod error;
pub mod geodesic;
pub mod io;
pub mod realization;
pub mod space;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::correspondence::{
        distortion, enumerate_correspondences, gh_distance_exact, gh_distance_heuristic, gh_lower_bound,
        Correspondence, GhResult, HeuristicConfig, Method, Relation,
    };
    pub use crate::geodesic::{geodesic_slice, slice_gh_check, GeodesicSlice, RectilinearGeodesic, SliceCheck};
    pub use crate::realization::{
        build_product, check_conditions, check_lipschitz_condition, check_monotone_condition, product_distance,
        realize_geodesic, verify_product, BuildOptions, ConstantFamily, FnFamily, InterpolationFamily, ParamGrid,
        ProductSpace, RectilinearFamily, VerificationReport,
    };
    pub use crate::space::{
        hausdorff_distance, point_set_distance, set_set_distance, validate_metric, FiniteMetricSpace, MetricKind,
        PointSubset, DEFAULT_TOL,
    };
    pub use crate::{Error, Result};
}
