use thiserror::Error;

use crate::realization::ConditionReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("distance matrix is not square (row {row} has {len} entries, expected {expected})")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("distance matrix has no rows")]
    EmptyMatrix,
    #[error("non-finite entry at ({0}, {1})")]
    NonFiniteEntry(usize, usize),
    #[error("negative entry {value} at ({i}, {j})")]
    NegativeEntry { i: usize, j: usize, value: f64 },
    #[error("nonzero diagonal entry {value} at index {i}")]
    NonzeroDiagonal { i: usize, value: f64 },
    #[error("asymmetric matrix: d({i},{j}) = {dij} but d({j},{i}) = {dji}")]
    AsymmetricMatrix { i: usize, j: usize, dij: f64, dji: f64 },
    #[error("zero distance between distinct points {i} and {j} in a metric space")]
    ZeroOffDiagonal { i: usize, j: usize },
    #[error("triangle inequality violated: d({i},{j}) exceeds d({i},{k}) + d({k},{j}) by {deficit}")]
    TriangleViolation { i: usize, j: usize, k: usize, deficit: f64 },
    #[error("label count {labels} does not match matrix size {n}")]
    LabelMismatch { labels: usize, n: usize },

    #[error("subset is empty")]
    EmptySubset,
    #[error("point index {index} out of range for a space of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("subsets belong to different spaces")]
    MixedOwners,

    #[error("relation is empty")]
    EmptyRelation,
    #[error("relation sizes {m}x{n} do not match spaces of sizes {x}x{y}")]
    SizeMismatch { m: usize, n: usize, x: usize, y: usize },
    #[error("relation is not a correspondence: {0}")]
    NotCorrespondence(String),
    #[error("search space of {pairs} candidate pairs exceeds the cap of {cap}")]
    SearchSpaceTooLarge { pairs: usize, cap: usize },
    #[error("correspondence is not optimal: half distortion {half_distortion} vs distance {distance}")]
    NotOptimalCorrespondence { half_distortion: f64, distance: f64 },

    #[error("parameter {value} outside [{lo}, {hi}]")]
    ParameterOutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("vertical scale c must be positive, got {0}")]
    NonpositiveC(f64),
    #[error("invalid parameter grid: {0}")]
    InvalidGrid(String),
    #[error("correspondence has zero distortion; the spaces are isometric and the geodesic is constant")]
    DegenerateGeodesic,
    #[error("product hypotheses fail: monotone={}, lipschitz={}", .0.monotone.ok, .0.lipschitz.ok)]
    ConditionFailed(Box<ConditionReport>),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
