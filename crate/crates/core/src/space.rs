//! Finite (pseudo)metric spaces, point/set distances and the Hausdorff
//! distance between nonempty subsets.
//!
//! Distances live in a dense row-major `n × n` matrix. A space is only ever
//! constructed through validation (or, inside the crate, from a matrix that is
//! a pseudometric by construction), so every [`FiniteMetricSpace`] satisfies
//! symmetry, a zero diagonal and the triangle inequality up to the tolerance
//! it was validated with.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute tolerance for the triangle inequality.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Metric,
    Pseudometric,
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricKind::Metric => f.write_str("metric"),
            MetricKind::Pseudometric => f.write_str("pseudometric"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    name: String,
    labels: Vec<String>,
    n: usize,
    dist: Vec<f64>,
    kind: MetricKind,
}

/// Validates `matrix` against the (pseudo)metric axioms and returns the space
/// with auto-generated labels `p0, p1, ...`.
///
/// Symmetry and the zero diagonal are checked exactly; only the triangle
/// inequality uses the absolute tolerance `tol`. The returned kind is the
/// strictest that holds, so a `Pseudometric` request on a matrix with positive
/// off-diagonal entries yields a `Metric` space.
pub fn validate_metric(matrix: &[Vec<f64>], kind: MetricKind, tol: f64) -> Result<FiniteMetricSpace> {
    let labels = (0..matrix.len()).map(|i| format!("p{i}")).collect();
    FiniteMetricSpace::new("", labels, matrix, kind, tol)
}

impl FiniteMetricSpace {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        matrix: &[Vec<f64>],
        kind: MetricKind,
        tol: f64,
    ) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if labels.len() != n {
            return Err(Error::LabelMismatch { labels: labels.len(), n });
        }
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare { row, len: r.len(), expected: n });
            }
        }
        for (i, r) in matrix.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry(i, j));
                }
            }
        }
        for (i, r) in matrix.iter().enumerate() {
            for (j, &value) in r.iter().enumerate() {
                if value < 0.0 {
                    return Err(Error::NegativeEntry { i, j, value });
                }
            }
        }
        for (i, r) in matrix.iter().enumerate() {
            if r[i] != 0.0 {
                return Err(Error::NonzeroDiagonal { i, value: r[i] });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::AsymmetricMatrix { i, j, dij: matrix[i][j], dji: matrix[j][i] });
                }
            }
        }
        let has_zero_off_diagonal = first_zero_off_diagonal(matrix);
        let kind = match (kind, has_zero_off_diagonal) {
            (MetricKind::Metric, Some((i, j))) => return Err(Error::ZeroOffDiagonal { i, j }),
            (_, Some(_)) => MetricKind::Pseudometric,
            (_, None) => MetricKind::Metric,
        };

        let dist: Vec<f64> = matrix.iter().flatten().copied().collect();
        let space = Self { name: name.into(), labels, n, dist, kind };
        let (deficit, witness) = space.worst_triangle_deficit();
        if deficit > tol {
            let (i, j, k) = witness.expect("positive deficit has a witness");
            return Err(Error::TriangleViolation { i, j, k, deficit });
        }
        Ok(space)
    }

    /// Builds a space from a matrix that is a pseudometric by construction
    /// (convex combinations of validated spaces). The kind is still computed.
    pub(crate) fn from_trusted(name: String, labels: Vec<String>, n: usize, dist: Vec<f64>) -> Self {
        debug_assert_eq!(dist.len(), n * n);
        let zero = (0..n).any(|i| (0..n).any(|j| i != j && dist[i * n + j] == 0.0));
        let kind = if zero { MetricKind::Pseudometric } else { MetricKind::Metric };
        Self { name, labels, n, dist, kind }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    pub fn to_matrix(&self) -> Vec<Vec<f64>> {
        self.dist.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    /// Largest distance from `i` to any point of the space.
    pub fn eccentricity(&self, i: usize) -> f64 {
        self.row(i).iter().copied().fold(0.0, f64::max)
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Largest `d(i,j) - d(i,k) - d(k,j)` over all triples, clamped at zero,
    /// with the first triple (in `i, j, k` order) attaining it.
    pub fn worst_triangle_deficit(&self) -> (f64, Option<(usize, usize, usize)>) {
        let n = self.n;
        let mut worst = 0.0;
        let mut witness = None;
        for i in 0..n {
            for j in 0..n {
                let dij = self.distance(i, j);
                for k in 0..n {
                    let deficit = dij - self.distance(i, k) - self.distance(k, j);
                    if deficit > worst {
                        worst = deficit;
                        witness = Some((i, j, k));
                    }
                }
            }
        }
        (worst, witness)
    }

    /// True when both spaces have the same size and identical matrices.
    pub fn same_matrix(&self, other: &Self) -> bool {
        self.n == other.n && self.dist == other.dist
    }
}

fn first_zero_off_diagonal(matrix: &[Vec<f64>]) -> Option<(usize, usize)> {
    let n = matrix.len();
    (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).find(|&(i, j)| matrix[i][j] == 0.0)
}

/// A nonempty set of point indices of one space.
#[derive(Debug, Clone)]
pub struct PointSubset<'a> {
    owner: &'a FiniteMetricSpace,
    indices: Vec<usize>,
}

impl<'a> PointSubset<'a> {
    /// Indices are sorted and deduplicated.
    pub fn new(owner: &'a FiniteMetricSpace, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        if indices.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&index) = indices.iter().find(|&&i| i >= owner.len()) {
            return Err(Error::IndexOutOfRange { index, len: owner.len() });
        }
        Ok(Self { owner, indices })
    }

    pub fn owner(&self) -> &'a FiniteMetricSpace {
        self.owner
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    fn check_owner(&self, space: &FiniteMetricSpace) -> Result<()> {
        if std::ptr::eq(self.owner, space) {
            Ok(())
        } else {
            Err(Error::MixedOwners)
        }
    }
}

/// `min_{a in A} d(x, a)`.
pub fn point_set_distance(space: &FiniteMetricSpace, x: usize, a: &PointSubset<'_>) -> Result<f64> {
    a.check_owner(space)?;
    if x >= space.len() {
        return Err(Error::IndexOutOfRange { index: x, len: space.len() });
    }
    Ok(point_to_set(|i, j| space.distance(i, j), x, a.indices()))
}

/// `min_{a in A, b in B} d(a, b)`.
pub fn set_set_distance(space: &FiniteMetricSpace, a: &PointSubset<'_>, b: &PointSubset<'_>) -> Result<f64> {
    a.check_owner(space)?;
    b.check_owner(space)?;
    Ok(set_to_set(|i, j| space.distance(i, j), a.indices(), b.indices()))
}

/// `max(max_{a in A} |aB|, max_{b in B} |Ab|)`.
pub fn hausdorff_distance(space: &FiniteMetricSpace, a: &PointSubset<'_>, b: &PointSubset<'_>) -> Result<f64> {
    a.check_owner(space)?;
    b.check_owner(space)?;
    Ok(hausdorff(|i, j| space.distance(i, j), a.indices(), b.indices()))
}

// Matrix-level kernels shared with the product space, whose matrix is not
// necessarily a validated metric.

pub(crate) fn point_to_set(d: impl Fn(usize, usize) -> f64, x: usize, set: &[usize]) -> f64 {
    set.iter().map(|&a| d(x, a)).fold(f64::INFINITY, f64::min)
}

pub(crate) fn set_to_set(d: impl Fn(usize, usize) -> f64, a: &[usize], b: &[usize]) -> f64 {
    a.iter().map(|&i| point_to_set(&d, i, b)).fold(f64::INFINITY, f64::min)
}

pub(crate) fn hausdorff(d: impl Fn(usize, usize) -> f64, a: &[usize], b: &[usize]) -> f64 {
    let forward = a.iter().map(|&i| point_to_set(&d, i, b)).fold(0.0, f64::max);
    let backward = b.iter().map(|&j| point_to_set(|p, q| d(q, p), j, a)).fold(0.0, f64::max);
    forward.max(backward)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line3() -> FiniteMetricSpace {
        validate_metric(
            &[vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]],
            MetricKind::Metric,
            DEFAULT_TOL,
        )
        .unwrap()
    }

    #[test]
    fn one_and_two_point_spaces() {
        let s = validate_metric(&[vec![0.0]], MetricKind::Metric, DEFAULT_TOL).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.kind(), MetricKind::Metric);
        let s = validate_metric(&[vec![0.0, 1.0], vec![1.0, 0.0]], MetricKind::Metric, DEFAULT_TOL).unwrap();
        assert_eq!(s.kind(), MetricKind::Metric);
        assert_eq!(s.labels(), ["p0", "p1"]);
    }

    #[test]
    fn triangle_violation_is_located() {
        let m = [vec![0.0, 1.0, 3.0], vec![1.0, 0.0, 1.0], vec![3.0, 1.0, 0.0]];
        match validate_metric(&m, MetricKind::Metric, DEFAULT_TOL) {
            Err(Error::TriangleViolation { i, j, k, deficit }) => {
                assert_eq!((i, j, k), (0, 2, 1));
                assert_eq!(deficit, 1.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn axiom_errors() {
        let asym = [vec![0.0, 1.0], vec![2.0, 0.0]];
        assert!(matches!(
            validate_metric(&asym, MetricKind::Metric, DEFAULT_TOL),
            Err(Error::AsymmetricMatrix { i: 0, j: 1, .. })
        ));
        let neg = [vec![0.0, -1.0], vec![-1.0, 0.0]];
        assert!(matches!(validate_metric(&neg, MetricKind::Metric, DEFAULT_TOL), Err(Error::NegativeEntry { .. })));
        let diag = [vec![1.0, 1.0], vec![1.0, 0.0]];
        assert!(matches!(
            validate_metric(&diag, MetricKind::Metric, DEFAULT_TOL),
            Err(Error::NonzeroDiagonal { i: 0, .. })
        ));
        let ragged = [vec![0.0, 1.0], vec![1.0]];
        assert!(matches!(
            validate_metric(&ragged, MetricKind::Metric, DEFAULT_TOL),
            Err(Error::NotSquare { row: 1, .. })
        ));
        let nan = [vec![0.0, f64::NAN], vec![f64::NAN, 0.0]];
        assert!(matches!(validate_metric(&nan, MetricKind::Metric, DEFAULT_TOL), Err(Error::NonFiniteEntry(0, 1))));
        assert!(matches!(validate_metric(&[], MetricKind::Metric, DEFAULT_TOL), Err(Error::EmptyMatrix)));
    }

    #[test]
    fn zero_off_diagonal_depends_on_requested_kind() {
        let m = [vec![0.0, 0.0], vec![0.0, 0.0]];
        assert!(matches!(
            validate_metric(&m, MetricKind::Metric, DEFAULT_TOL),
            Err(Error::ZeroOffDiagonal { i: 0, j: 1 })
        ));
        let s = validate_metric(&m, MetricKind::Pseudometric, DEFAULT_TOL).unwrap();
        assert_eq!(s.kind(), MetricKind::Pseudometric);
        // strictest kind that holds
        let s = validate_metric(&[vec![0.0, 1.0], vec![1.0, 0.0]], MetricKind::Pseudometric, DEFAULT_TOL).unwrap();
        assert_eq!(s.kind(), MetricKind::Metric);
    }

    #[test]
    fn triangle_tolerance_absorbs_rounding() {
        let m = [vec![0.0, 1.0, 2.0 + 1e-12], vec![1.0, 0.0, 1.0], vec![2.0 + 1e-12, 1.0, 0.0]];
        assert!(validate_metric(&m, MetricKind::Metric, DEFAULT_TOL).is_ok());
        assert!(validate_metric(&m, MetricKind::Metric, 0.0).is_err());
    }

    #[test]
    fn point_and_set_distances_on_a_line() {
        let s = line3();
        let a2 = PointSubset::new(&s, [2]).unwrap();
        let a12 = PointSubset::new(&s, [1, 2]).unwrap();
        let a01 = PointSubset::new(&s, [0, 1]).unwrap();
        let a0 = PointSubset::new(&s, [0]).unwrap();
        let a02 = PointSubset::new(&s, [0, 2]).unwrap();
        assert_eq!(point_set_distance(&s, 1, &a12).unwrap(), 0.0);
        assert_eq!(point_set_distance(&s, 0, &a2).unwrap(), 2.0);
        assert_eq!(point_set_distance(&s, 0, &a12).unwrap(), 1.0);
        assert_eq!(set_set_distance(&s, &a01, &a12).unwrap(), 0.0);
        assert_eq!(set_set_distance(&s, &a0, &a2).unwrap(), 2.0);
        assert_eq!(set_set_distance(&s, &a01, &a2).unwrap(), 1.0);
        assert_eq!(hausdorff_distance(&s, &a02, &a02).unwrap(), 0.0);
        assert_eq!(hausdorff_distance(&s, &a0, &a02).unwrap(), 2.0);
        assert_eq!(hausdorff_distance(&s, &a0, &a2).unwrap(), 2.0);
    }

    #[test]
    fn subset_errors() {
        let s = line3();
        let other = line3();
        assert!(matches!(PointSubset::new(&s, []), Err(Error::EmptySubset)));
        assert!(matches!(PointSubset::new(&s, [3]), Err(Error::IndexOutOfRange { index: 3, len: 3 })));
        let a = PointSubset::new(&s, [0]).unwrap();
        let b = PointSubset::new(&other, [1]).unwrap();
        assert!(matches!(hausdorff_distance(&s, &a, &b), Err(Error::MixedOwners)));
        assert!(matches!(point_set_distance(&s, 5, &a), Err(Error::IndexOutOfRange { .. })));
    }
}
