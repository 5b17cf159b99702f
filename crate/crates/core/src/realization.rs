//! Product metric on `Z × [a,b]` built from a one-parameter family of
//! pseudometrics on `Z`:
//!
//! ```text
//! |(z1,t1)(z2,t2)| = min_z ( |z1 z|_{t1} + |z z2|_{t2} ) + c |t1 - t2|
//! ```
//!
//! When every `t ↦ |zz'|_t` is monotone and `|zz'|_t - |zz'|_s ≤ 2c|t-s|`,
//! this is a (pseudo)metric whose slices `Z_t` restrict to `ρ_t` and sit at
//! Hausdorff distance exactly `c|t-s|` from each other. For a rectilinear
//! geodesic with `c = ½ dis R` that distance is `d_GH(X,Y)·|t-s|`.
//!
//! Everything here is certified on a finite [`ParamGrid`].

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::geodesic::RectilinearGeodesic;
use crate::space::{hausdorff, set_to_set, FiniteMetricSpace, MetricKind, DEFAULT_TOL};

/// `ρ_t` on a finite ground set for `t` in a closed interval.
pub trait InterpolationFamily: fmt::Debug + Send + Sync {
    fn ground_size(&self) -> usize;

    fn interval(&self) -> (f64, f64);

    /// `|zw|_t`. Callers guarantee `t` lies in [`interval`](Self::interval).
    fn distance(&self, z: usize, w: usize, t: f64) -> f64;

    fn labels(&self) -> Vec<String> {
        (0..self.ground_size()).map(|z| format!("z{z}")).collect()
    }

    fn dist_at(&self, t: f64) -> Vec<Vec<f64>> {
        let n = self.ground_size();
        (0..n).map(|z| (0..n).map(|w| self.distance(z, w, t)).collect()).collect()
    }

    /// Exact checks of both product hypotheses, for families whose shape
    /// makes them decidable without a grid.
    fn closed_form_conditions(&self, _c: f64, _tol: f64) -> Option<ConditionReport> {
        None
    }
}

/// The rectilinear geodesic of a correspondence, on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct RectilinearFamily {
    geodesic: RectilinearGeodesic,
}

impl RectilinearFamily {
    pub fn new(geodesic: RectilinearGeodesic) -> Self {
        Self { geodesic }
    }

    pub fn geodesic(&self) -> &RectilinearGeodesic {
        &self.geodesic
    }
}

impl InterpolationFamily for RectilinearFamily {
    fn ground_size(&self) -> usize {
        self.geodesic.len()
    }

    fn interval(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn distance(&self, z: usize, w: usize, t: f64) -> f64 {
        self.geodesic.distance_at(z, w, t)
    }

    fn labels(&self) -> Vec<String> {
        self.geodesic.labels().to_vec()
    }

    // Affine in t, so always monotone; the worst slope is max |dy - dx|.
    fn closed_form_conditions(&self, c: f64, tol: f64) -> Option<ConditionReport> {
        let n = self.geodesic.len();
        let mut max_slope = 0.0f64;
        let mut steepest = None;
        for p in 0..n {
            for q in (p + 1)..n {
                let slope = self.geodesic.slope(p, q);
                if slope.abs() > max_slope {
                    max_slope = slope.abs();
                    steepest = Some((p, q, slope));
                }
            }
        }
        let deficit = max_slope - 2.0 * c;
        let witness = steepest.filter(|_| deficit > 0.0).map(|(z, w, slope)| {
            let (t, s) = if slope > 0.0 { (1.0, 0.0) } else { (0.0, 1.0) };
            PairWitness { z, w, t, s }
        });
        Some(ConditionReport {
            monotone: MonotoneCheck { ok: true, violation: 0.0, witness: None },
            lipschitz: LipschitzCheck { ok: deficit <= tol, deficit: deficit.max(0.0), max_slope, witness },
            closed_form: true,
        })
    }
}

/// `ρ_t ≡ ρ` for all `t`.
#[derive(Debug, Clone)]
pub struct ConstantFamily {
    space: FiniteMetricSpace,
    interval: (f64, f64),
}

impl ConstantFamily {
    pub fn new(space: FiniteMetricSpace, a: f64, b: f64) -> Result<Self> {
        check_interval(a, b)?;
        Ok(Self { space, interval: (a, b) })
    }
}

impl InterpolationFamily for ConstantFamily {
    fn ground_size(&self) -> usize {
        self.space.len()
    }

    fn interval(&self) -> (f64, f64) {
        self.interval
    }

    fn distance(&self, z: usize, w: usize, _t: f64) -> f64 {
        self.space.distance(z, w)
    }

    fn labels(&self) -> Vec<String> {
        self.space.labels().to_vec()
    }

    fn closed_form_conditions(&self, _c: f64, _tol: f64) -> Option<ConditionReport> {
        Some(ConditionReport {
            monotone: MonotoneCheck { ok: true, violation: 0.0, witness: None },
            lipschitz: LipschitzCheck { ok: true, deficit: 0.0, max_slope: 0.0, witness: None },
            closed_form: true,
        })
    }
}

type DistanceFn = dyn Fn(usize, usize, f64) -> f64 + Send + Sync;

/// A family given by an arbitrary closure, checked on the grid only.
pub struct FnFamily {
    size: usize,
    interval: (f64, f64),
    f: Box<DistanceFn>,
}

impl FnFamily {
    pub fn new(
        size: usize,
        a: f64,
        b: f64,
        f: impl Fn(usize, usize, f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        check_interval(a, b)?;
        Ok(Self { size, interval: (a, b), f: Box::new(f) })
    }
}

impl fmt::Debug for FnFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnFamily").field("size", &self.size).field("interval", &self.interval).finish()
    }
}

impl InterpolationFamily for FnFamily {
    fn ground_size(&self) -> usize {
        self.size
    }

    fn interval(&self) -> (f64, f64) {
        self.interval
    }

    fn distance(&self, z: usize, w: usize, t: f64) -> f64 {
        if z == w {
            0.0
        } else {
            (self.f)(z.min(w), z.max(w), t)
        }
    }
}

/// Slice matrices at grid values, piecewise linear in between. This is what
/// a saved product reconstructs to.
#[derive(Debug, Clone)]
pub struct TabulatedFamily {
    size: usize,
    grid: Vec<f64>,
    slices: Vec<Vec<f64>>,
    labels: Vec<String>,
}

impl TabulatedFamily {
    pub fn new(grid: &ParamGrid, slices: Vec<Vec<Vec<f64>>>, labels: Vec<String>) -> Result<Self> {
        let size = labels.len();
        if slices.len() != grid.len() {
            return Err(Error::InvalidGrid(format!("{} slices for {} grid values", slices.len(), grid.len())));
        }
        let mut flat = Vec::with_capacity(slices.len());
        for s in slices {
            if s.len() != size || s.iter().any(|r| r.len() != size) {
                return Err(Error::NotSquare { row: 0, len: s.len(), expected: size });
            }
            flat.push(s.into_iter().flatten().collect());
        }
        Ok(Self { size, grid: grid.values().to_vec(), slices: flat, labels })
    }
}

impl InterpolationFamily for TabulatedFamily {
    fn ground_size(&self) -> usize {
        self.size
    }

    fn interval(&self) -> (f64, f64) {
        (self.grid[0], self.grid[self.grid.len() - 1])
    }

    fn distance(&self, z: usize, w: usize, t: f64) -> f64 {
        let k = z * self.size + w;
        let hi = self.grid.partition_point(|&g| g < t).min(self.grid.len() - 1);
        if self.grid[hi] == t || hi == 0 {
            return self.slices[hi][k];
        }
        let (t0, t1) = (self.grid[hi - 1], self.grid[hi]);
        let u = (t - t0) / (t1 - t0);
        (1.0 - u) * self.slices[hi - 1][k] + u * self.slices[hi][k]
    }

    fn labels(&self) -> Vec<String> {
        self.labels.clone()
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidGrid(format!("interval [{a}, {b}] is not a proper finite segment")));
    }
    Ok(())
}

/// Strictly increasing parameter values; the first and last are the
/// segment endpoints.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ParamGrid {
    values: Vec<f64>,
}

impl ParamGrid {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidGrid("need at least two values".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid("non-finite value".into()));
        }
        if let Some(w) = values.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid(format!("not strictly increasing at {} -> {}", w[0], w[1])));
        }
        Ok(Self { values })
    }

    /// `count` equally spaced values from `a` to `b` inclusive.
    pub fn uniform(a: f64, b: f64, count: usize) -> Result<Self> {
        check_interval(a, b)?;
        if count < 2 {
            return Err(Error::InvalidGrid(format!("grid size {count} < 2")));
        }
        let last = (count - 1) as f64;
        let values = (0..count).map(|k| if k + 1 == count { b } else { a + (b - a) * (k as f64) / last }).collect();
        Self::new(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn start(&self) -> f64 {
        self.values[0]
    }

    pub fn end(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

/// A pair of ground points and two parameter values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairWitness {
    pub z: usize,
    pub w: usize,
    pub t: f64,
    pub s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneCheck {
    pub ok: bool,
    /// Smaller of the largest drop and the largest rise along the worst pair.
    pub violation: f64,
    pub witness: Option<PairWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LipschitzCheck {
    pub ok: bool,
    /// Largest `|zw|_t - |zw|_s - 2c|t-s|`, clamped at zero.
    pub deficit: f64,
    /// Largest `| |zw|_t - |zw|_s | / |t-s|` seen.
    pub max_slope: f64,
    pub witness: Option<PairWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub monotone: MonotoneCheck,
    pub lipschitz: LipschitzCheck,
    pub closed_form: bool,
}

impl ConditionReport {
    pub fn ok(&self) -> bool {
        self.monotone.ok && self.lipschitz.ok
    }
}

fn check_c(c: f64) -> Result<()> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(Error::NonpositiveC(c))
    }
}

fn check_param(family: &dyn InterpolationFamily, t: f64) -> Result<()> {
    let (lo, hi) = family.interval();
    if t >= lo && t <= hi {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange { value: t, lo, hi })
    }
}

/// Distance between `(z1, t1)` and `(z2, t2)` in the product.
pub fn product_distance(
    family: &dyn InterpolationFamily,
    c: f64,
    (z1, t1): (usize, f64),
    (z2, t2): (usize, f64),
) -> Result<f64> {
    check_c(c)?;
    check_param(family, t1)?;
    check_param(family, t2)?;
    let len = family.ground_size();
    for z in [z1, z2] {
        if z >= len {
            return Err(Error::IndexOutOfRange { index: z, len });
        }
    }
    let through =
        (0..len).map(|z| family.distance(z1, z, t1) + family.distance(z, z2, t2)).fold(f64::INFINITY, f64::min);
    Ok(through + c * (t1 - t2).abs())
}

fn check_grid_fits(family: &dyn InterpolationFamily, grid: &ParamGrid) -> Result<()> {
    let (a, b) = family.interval();
    if grid.start() != a || grid.end() != b {
        return Err(Error::InvalidGrid(format!(
            "grid spans [{}, {}] but the family lives on [{a}, {b}]",
            grid.start(),
            grid.end()
        )));
    }
    Ok(())
}

/// Checks that every `t ↦ |zw|_t` is non-decreasing or non-increasing on
/// the grid, up to `tol`.
pub fn check_monotone_condition(family: &dyn InterpolationFamily, grid: &ParamGrid, tol: f64) -> MonotoneCheck {
    let g = grid.values();
    let slices: Vec<_> = g.iter().map(|&t| family.dist_at(t)).collect();
    let n = family.ground_size();
    let mut worst = 0.0;
    let mut witness = None;
    for z in 0..n {
        for w in (z + 1)..n {
            // largest drop and largest rise over ordered grid pairs
            let (mut drop, mut drop_at) = (0.0f64, (0, 0));
            let (mut rise, mut rise_at) = (0.0f64, (0, 0));
            for k in 0..g.len() {
                for l in (k + 1)..g.len() {
                    let delta = slices[l][z][w] - slices[k][z][w];
                    if -delta > drop {
                        drop = -delta;
                        drop_at = (k, l);
                    }
                    if delta > rise {
                        rise = delta;
                        rise_at = (k, l);
                    }
                }
            }
            let (violation, (k, l)) = if drop <= rise { (drop, drop_at) } else { (rise, rise_at) };
            if violation > worst {
                worst = violation;
                witness = Some(PairWitness { z, w, t: g[k], s: g[l] });
            }
        }
    }
    MonotoneCheck { ok: worst <= tol, violation: worst, witness }
}

/// Checks `|zw|_t - |zw|_s ≤ 2c|t-s| + tol` for all pairs and grid pairs.
pub fn check_lipschitz_condition(
    family: &dyn InterpolationFamily,
    c: f64,
    grid: &ParamGrid,
    tol: f64,
) -> LipschitzCheck {
    let g = grid.values();
    let slices: Vec<_> = g.iter().map(|&t| family.dist_at(t)).collect();
    let n = family.ground_size();
    let mut worst = 0.0;
    let mut max_slope = 0.0f64;
    let mut witness = None;
    for z in 0..n {
        for w in (z + 1)..n {
            for k in 0..g.len() {
                for l in 0..g.len() {
                    if k == l {
                        continue;
                    }
                    let gap = (g[k] - g[l]).abs();
                    let delta = slices[k][z][w] - slices[l][z][w];
                    max_slope = max_slope.max(delta.abs() / gap);
                    let deficit = delta - 2.0 * c * gap;
                    if deficit > worst {
                        worst = deficit;
                        witness = Some(PairWitness { z, w, t: g[k], s: g[l] });
                    }
                }
            }
        }
    }
    LipschitzCheck { ok: worst <= tol, deficit: worst, max_slope, witness }
}

/// Closed-form checks when the family supports them, grid checks otherwise.
pub fn check_conditions(family: &dyn InterpolationFamily, c: f64, grid: &ParamGrid, tol: f64) -> ConditionReport {
    family.closed_form_conditions(c, tol).unwrap_or_else(|| ConditionReport {
        monotone: check_monotone_condition(family, grid, tol),
        lipschitz: check_lipschitz_condition(family, c, grid, tol),
        closed_form: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildOptions {
    pub tol: f64,
    /// Build even when the hypotheses fail.
    pub force: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, force: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductPoint {
    pub z: usize,
    pub label: String,
    pub t: f64,
}

/// `Z × grid` with the materialized product distance. Point `z` of the
/// slice at grid index `k` has index `k·|Z| + z`.
#[derive(Debug, Clone)]
pub struct ProductSpace {
    family: Arc<dyn InterpolationFamily>,
    c: f64,
    grid: ParamGrid,
    points: Vec<ProductPoint>,
    dist: Vec<f64>,
    forced: bool,
}

pub fn build_product(
    family: Arc<dyn InterpolationFamily>,
    c: f64,
    grid: ParamGrid,
    options: BuildOptions,
) -> Result<ProductSpace> {
    check_c(c)?;
    check_grid_fits(family.as_ref(), &grid)?;
    let conditions = check_conditions(family.as_ref(), c, &grid, options.tol);
    if !conditions.ok() && !options.force {
        return Err(Error::ConditionFailed(Box::new(conditions)));
    }

    let size = family.ground_size();
    let g = grid.values();
    let slices: Vec<Vec<Vec<f64>>> = g.iter().map(|&t| family.dist_at(t)).collect();
    let labels = family.labels();
    let points: Vec<ProductPoint> = g
        .iter()
        .flat_map(|&t| labels.iter().enumerate().map(move |(z, l)| ProductPoint { z, label: l.clone(), t }))
        .collect();

    let total = points.len();
    let rows: Vec<Vec<f64>> = (0..total)
        .into_par_iter()
        .map(|p| {
            let (k, z1) = (p / size, p % size);
            (0..total)
                .map(|q| {
                    if q < p {
                        return 0.0;
                    }
                    let (l, z2) = (q / size, q % size);
                    let through = (0..size).map(|z| slices[k][z1][z] + slices[l][z][z2]).fold(f64::INFINITY, f64::min);
                    through + c * (g[k] - g[l]).abs()
                })
                .collect()
        })
        .collect();
    let mut dist = vec![0.0; total * total];
    for p in 0..total {
        for q in p..total {
            dist[p * total + q] = rows[p][q];
            dist[q * total + p] = rows[p][q];
        }
    }

    Ok(ProductSpace { family, c, grid, points, dist, forced: !conditions.ok() })
}

impl ProductSpace {
    /// Reassembles a product from stored parts. The family is rebuilt from
    /// the slice submatrices.
    pub fn from_parts(c: f64, grid: ParamGrid, points: Vec<ProductPoint>, matrix: Vec<Vec<f64>>) -> Result<Self> {
        check_c(c)?;
        let total = points.len();
        if total == 0 || !total.is_multiple_of(grid.len()) {
            return Err(Error::Parse(format!("{total} points do not tile a grid of {} values", grid.len())));
        }
        let size = total / grid.len();
        for (p, pt) in points.iter().enumerate() {
            let (k, z) = (p / size, p % size);
            if pt.z != z || pt.t != grid.values()[k] {
                return Err(Error::Parse(format!(
                    "point {p} is (z={}, t={}), expected (z={z}, t={})",
                    pt.z,
                    pt.t,
                    grid.values()[k]
                )));
            }
        }
        if matrix.len() != total {
            return Err(Error::NotSquare { row: 0, len: matrix.len(), expected: total });
        }
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != total {
                return Err(Error::NotSquare { row, len: r.len(), expected: total });
            }
            if let Some(col) = r.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFiniteEntry(row, col));
            }
        }
        let labels = points[..size].iter().map(|p| p.label.clone()).collect();
        let slices = (0..grid.len())
            .map(|k| (0..size).map(|z| (0..size).map(|w| matrix[k * size + z][k * size + w]).collect()).collect())
            .collect();
        let family = TabulatedFamily::new(&grid, slices, labels)?;
        let dist = matrix.into_iter().flatten().collect();
        Ok(Self { family: Arc::new(family), c, grid, points, dist, forced: false })
    }

    pub fn family(&self) -> &dyn InterpolationFamily {
        self.family.as_ref()
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn grid(&self) -> &ParamGrid {
        &self.grid
    }

    pub fn points(&self) -> &[ProductPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ground_size(&self) -> usize {
        self.family.ground_size()
    }

    /// Index of `(z, grid[k])`.
    pub fn index(&self, z: usize, k: usize) -> usize {
        k * self.ground_size() + z
    }

    #[inline]
    pub fn distance(&self, p: usize, q: usize) -> f64 {
        self.dist[p * self.points.len() + q]
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        self.dist.chunks(self.points.len()).map(<[f64]>::to_vec).collect()
    }

    /// Indices of the slice at grid index `k`.
    pub fn slice_indices(&self, k: usize) -> Vec<usize> {
        let size = self.ground_size();
        (k * size..(k + 1) * size).collect()
    }

    /// True when built with `force` despite failed hypotheses.
    pub fn forced(&self) -> bool {
        self.forced
    }

    /// `d_H(Z_t, Z_s)` for grid indices `k` and `l`.
    pub fn slice_hausdorff(&self, k: usize, l: usize) -> f64 {
        hausdorff(|p, q| self.distance(p, q), &self.slice_indices(k), &self.slice_indices(l))
    }

    /// `|Z_t Z_s|`, the smallest distance between the two slices.
    pub fn slice_min_distance(&self, k: usize, l: usize) -> f64 {
        set_to_set(|p, q| self.distance(p, q), &self.slice_indices(k), &self.slice_indices(l))
    }

    /// The product as a plain space; fails if it is not a (pseudo)metric
    /// within `tol`.
    pub fn to_space(&self, tol: f64) -> Result<FiniteMetricSpace> {
        let labels = self.points.iter().map(|p| format!("{}@{}", p.label, p.t)).collect();
        FiniteMetricSpace::new("product", labels, &self.matrix(), MetricKind::Pseudometric, tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TripleWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

/// Certificate for a product: hypotheses, metric axioms and slice identities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub c: f64,
    pub grid_size: usize,
    pub ground_size: usize,
    pub kind: MetricKind,
    pub hypotheses_forced: bool,
    pub closed_form_conditions: bool,
    pub monotone_ok: bool,
    pub monotone_violation: f64,
    pub monotone_witness: Option<PairWitness>,
    pub lipschitz_ok: bool,
    pub lipschitz_deficit: f64,
    pub lipschitz_witness: Option<PairWitness>,
    pub max_slope: f64,
    pub max_triangle_violation: f64,
    pub triangle_witness: Option<TripleWitness>,
    pub symmetric: bool,
    pub zero_diagonal: bool,
    /// Max over grid pairs of `|d_H(Z_t, Z_s) - c|t-s||`.
    pub slice_hausdorff_max_error: f64,
    /// Max over grid pairs of `||Z_t Z_s| - c|t-s||`.
    pub slice_min_distance_max_error: f64,
    /// Max deviation of a slice submatrix from `ρ_t`.
    pub restriction_max_error: f64,
    /// Max deviation of `|(z,t)(z,s)|` from `c|t-s|`.
    pub fiber_max_error: f64,
    /// Max deviation of the stored matrix from a fresh evaluation.
    pub formula_max_error: f64,
    pub tol: f64,
    pub certified: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.certified
    }
}

/// Largest `d(i,j) - d(i,k) - d(k,j)` over all triples, clamped at zero.
fn triangle_scan(prod: &ProductSpace) -> (f64, Option<TripleWitness>) {
    let n = prod.len();
    let per_row: Vec<(f64, Option<TripleWitness>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut worst = 0.0;
            let mut witness = None;
            for j in 0..n {
                let dij = prod.distance(i, j);
                for k in 0..n {
                    let v = dij - prod.distance(i, k) - prod.distance(k, j);
                    if v > worst {
                        worst = v;
                        witness = Some(TripleWitness { i, j, k });
                    }
                }
            }
            (worst, witness)
        })
        .collect();
    // first row wins ties
    per_row.into_iter().fold((0.0, None), |best, row| if row.0 > best.0 { row } else { best })
}

pub fn verify_product(prod: &ProductSpace, tol: f64) -> VerificationReport {
    let family = prod.family();
    let conditions = check_conditions(family, prod.c, &prod.grid, tol);
    let (max_triangle_violation, triangle_witness) = triangle_scan(prod);
    let n = prod.len();
    let size = prod.ground_size();
    let g = prod.grid.values();

    let symmetric = (0..n).all(|p| (0..p).all(|q| prod.distance(p, q) == prod.distance(q, p)));
    let zero_diagonal = (0..n).all(|p| prod.distance(p, p) == 0.0);
    let pseudo = (0..n).any(|p| (0..n).any(|q| p != q && prod.distance(p, q) == 0.0));

    let mut hausdorff_err = 0.0f64;
    let mut min_err = 0.0f64;
    let mut fiber_err = 0.0f64;
    for k in 0..g.len() {
        for l in 0..g.len() {
            let target = prod.c * (g[k] - g[l]).abs();
            hausdorff_err = hausdorff_err.max((prod.slice_hausdorff(k, l) - target).abs());
            min_err = min_err.max((prod.slice_min_distance(k, l) - target).abs());
            for z in 0..size {
                let d = prod.distance(prod.index(z, k), prod.index(z, l));
                fiber_err = fiber_err.max((d - target).abs());
            }
        }
    }

    let mut restriction_err = 0.0f64;
    for (k, &t) in g.iter().enumerate() {
        for z in 0..size {
            for w in 0..size {
                let d = prod.distance(prod.index(z, k), prod.index(w, k));
                restriction_err = restriction_err.max((d - family.distance(z, w, t)).abs());
            }
        }
    }

    let mut formula_err = 0.0f64;
    for p in 0..n {
        for q in 0..n {
            let (a, b) = (&prod.points[p], &prod.points[q]);
            let fresh = product_distance(family, prod.c, (a.z, a.t), (b.z, b.t)).unwrap_or(f64::INFINITY);
            formula_err = formula_err.max((fresh - prod.distance(p, q)).abs());
        }
    }

    let certified = conditions.ok()
        && max_triangle_violation <= tol
        && symmetric
        && zero_diagonal
        && hausdorff_err <= tol
        && min_err <= tol
        && restriction_err <= tol
        && fiber_err <= tol
        && formula_err <= tol;

    VerificationReport {
        c: prod.c,
        grid_size: g.len(),
        ground_size: size,
        kind: if pseudo { MetricKind::Pseudometric } else { MetricKind::Metric },
        hypotheses_forced: prod.forced,
        closed_form_conditions: conditions.closed_form,
        monotone_ok: conditions.monotone.ok,
        monotone_violation: conditions.monotone.violation,
        monotone_witness: conditions.monotone.witness,
        lipschitz_ok: conditions.lipschitz.ok,
        lipschitz_deficit: conditions.lipschitz.deficit,
        lipschitz_witness: conditions.lipschitz.witness,
        max_slope: conditions.lipschitz.max_slope,
        max_triangle_violation,
        triangle_witness,
        symmetric,
        zero_diagonal,
        slice_hausdorff_max_error: hausdorff_err,
        slice_min_distance_max_error: min_err,
        restriction_max_error: restriction_err,
        fiber_max_error: fiber_err,
        formula_max_error: formula_err,
        tol,
        certified,
    }
}

/// A realized geodesic and its certificate.
#[derive(Debug, Clone)]
pub struct Realization {
    pub distortion: f64,
    pub product: ProductSpace,
    pub report: VerificationReport,
}

/// Builds the product over `R × grid` for the rectilinear geodesic of `corr`,
/// with `c = ½ dis R` unless overridden, and verifies it.
pub fn realize_geodesic(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    corr: &Correspondence,
    grid: ParamGrid,
    c_override: Option<f64>,
    options: BuildOptions,
) -> Result<Realization> {
    let geodesic = RectilinearGeodesic::new(corr, x, y)?;
    let distortion = geodesic.distortion();
    let c = match c_override {
        Some(c) => {
            check_c(c)?;
            c
        }
        None if distortion == 0.0 => return Err(Error::DegenerateGeodesic),
        None => 0.5 * distortion,
    };
    let family: Arc<dyn InterpolationFamily> = Arc::new(RectilinearFamily::new(geodesic));
    let product = build_product(family, c, grid, options)?;
    let report = verify_product(&product, options.tol);
    Ok(Realization { distortion, product, report })
}
