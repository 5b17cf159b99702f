//! Rectilinear geodesics: the point set of a correspondence `R` carrying the
//! interpolated distance `(1-t)|xx'| + t|yy'|`.
//!
//! The slice keeps every pair of `R` at every `t`, so at the endpoints pairs
//! that share a coordinate sit at distance zero and the slice is a
//! pseudometric.

use std::sync::Arc;

use serde::Serialize;

use crate::correspondence::{distortion, gh_distance_exact, Correspondence};
use crate::error::{Error, Result};
use crate::space::FiniteMetricSpace;

/// Source and target distances pulled back to `R × R`, computed once per
/// correspondence and shared by all slices.
#[derive(Debug)]
struct Pullback {
    corr: Correspondence,
    size: usize,
    dx: Vec<f64>,
    dy: Vec<f64>,
    labels: Vec<String>,
    distortion: f64,
}

#[derive(Debug, Clone)]
pub struct RectilinearGeodesic {
    inner: Arc<Pullback>,
}

impl RectilinearGeodesic {
    pub fn new(corr: &Correspondence, x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<Self> {
        let dis = distortion(corr, x, y)?;
        let pairs = corr.pairs();
        let size = pairs.len();
        let mut dx = Vec::with_capacity(size * size);
        let mut dy = Vec::with_capacity(size * size);
        for &(i, j) in pairs {
            for &(i2, j2) in pairs {
                dx.push(x.distance(i, i2));
                dy.push(y.distance(j, j2));
            }
        }
        let labels = pairs.iter().map(|&(i, j)| format!("({},{})", x.labels()[i], y.labels()[j])).collect();
        Ok(Self { inner: Arc::new(Pullback { corr: corr.clone(), size, dx, dy, labels, distortion: dis }) })
    }

    pub fn correspondence(&self) -> &Correspondence {
        &self.inner.corr
    }

    /// Number of points of every slice, `|R|`.
    pub fn len(&self) -> usize {
        self.inner.size
    }

    pub fn is_empty(&self) -> bool {
        self.inner.size == 0
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn distortion(&self) -> f64 {
        self.inner.distortion
    }

    /// `|xx'|` for the pairs at positions `p` and `q` of `R`.
    pub fn source_distance(&self, p: usize, q: usize) -> f64 {
        self.inner.dx[p * self.inner.size + q]
    }

    /// `|yy'|` for the pairs at positions `p` and `q` of `R`.
    pub fn target_distance(&self, p: usize, q: usize) -> f64 {
        self.inner.dy[p * self.inner.size + q]
    }

    /// Rate of change in `t` of the distance between `p` and `q`.
    pub fn slope(&self, p: usize, q: usize) -> f64 {
        self.target_distance(p, q) - self.source_distance(p, q)
    }

    /// Interpolated distance without the range check on `t`.
    #[inline]
    pub(crate) fn distance_at(&self, p: usize, q: usize, t: f64) -> f64 {
        let k = p * self.inner.size + q;
        (1.0 - t) * self.inner.dx[k] + t * self.inner.dy[k]
    }

    pub fn slice(&self, t: f64) -> Result<GeodesicSlice> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::ParameterOutOfRange { value: t, lo: 0.0, hi: 1.0 });
        }
        Ok(GeodesicSlice { geodesic: self.clone(), t })
    }
}

/// `R_t`: the geodesic at one parameter value.
#[derive(Debug, Clone)]
pub struct GeodesicSlice {
    geodesic: RectilinearGeodesic,
    t: f64,
}

impl GeodesicSlice {
    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn geodesic(&self) -> &RectilinearGeodesic {
        &self.geodesic
    }

    pub fn len(&self) -> usize {
        self.geodesic.len()
    }

    pub fn is_empty(&self) -> bool {
        self.geodesic.is_empty()
    }

    pub fn distance(&self, p: usize, q: usize) -> f64 {
        self.geodesic.distance_at(p, q, self.t)
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        (0..n).map(|p| (0..n).map(|q| self.distance(p, q)).collect()).collect()
    }

    /// The slice as a standalone space named `geodesic(t=<t>)` with labels
    /// `(x,y)`. Its kind is pseudometric whenever two pairs collapse.
    pub fn to_space(&self) -> FiniteMetricSpace {
        let n = self.len();
        let dist = (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).map(|(p, q)| self.distance(p, q)).collect();
        FiniteMetricSpace::from_trusted(format!("geodesic(t={})", self.t), self.geodesic.labels().to_vec(), n, dist)
    }
}

pub fn geodesic_slice(
    corr: &Correspondence,
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    t: f64,
) -> Result<GeodesicSlice> {
    RectilinearGeodesic::new(corr, x, y)?.slice(t)
}

/// Both sides of the geodesic identity between two slices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SliceCheck {
    /// `|t - s| · d_GH(X, Y)`.
    pub expected: f64,
    /// Exact distance between `R_t` and `R_s`.
    pub actual: f64,
}

/// Tolerance for accepting `½ dis R` as the exact distance.
pub const OPTIMALITY_TOL: f64 = 1e-12;

pub fn slice_gh_check(
    corr: &Correspondence,
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    t: f64,
    s: f64,
) -> Result<SliceCheck> {
    let geodesic = RectilinearGeodesic::new(corr, x, y)?;
    let distance = gh_distance_exact(x, y)?.value;
    let half_distortion = 0.5 * geodesic.distortion();
    if (half_distortion - distance).abs() > OPTIMALITY_TOL {
        return Err(Error::NotOptimalCorrespondence { half_distortion, distance });
    }
    let a = geodesic.slice(t)?.to_space();
    let b = geodesic.slice(s)?.to_space();
    let actual = gh_distance_exact(&a, &b)?.value;
    Ok(SliceCheck { expected: (t - s).abs() * distance, actual })
}
