//! File formats.
//!
//! * space: `{"name": .., "points": [..], "matrix": [[..]]}` or a plain
//!   whitespace-separated square matrix (labels `p0, p1, ...`);
//! * correspondence: `{"m": .., "n": .., "pairs": [[i, j], ..]}`;
//! * product: `{"c": .., "grid": [..], "points": [{"z", "label", "t"}], "matrix": [[..]]}`.
//!
//! Floats are written in shortest round-trip form, so reading a file back
//! reproduces every value bit for bit.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::realization::{ParamGrid, ProductPoint, ProductSpace};
use crate::space::{FiniteMetricSpace, MetricKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceFile {
    #[serde(default)]
    pub name: String,
    pub points: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
}

impl From<&FiniteMetricSpace> for SpaceFile {
    fn from(s: &FiniteMetricSpace) -> Self {
        Self { name: s.name().to_owned(), points: s.labels().to_vec(), matrix: s.to_matrix() }
    }
}

impl SpaceFile {
    pub fn into_space(self, tol: f64) -> Result<FiniteMetricSpace> {
        FiniteMetricSpace::new(self.name, self.points, &self.matrix, MetricKind::Pseudometric, tol)
    }
}

/// Parses either format; JSON is recognized by a leading `{`.
pub fn parse_space(text: &str, tol: f64) -> Result<FiniteMetricSpace> {
    if text.trim_start().starts_with('{') {
        let file: SpaceFile = serde_json::from_str(text)?;
        return file.into_space(tol);
    }
    let matrix = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(row, line)| {
            line.split_whitespace()
                .map(|tok| tok.parse::<f64>().map_err(|e| Error::Parse(format!("row {row}: {tok:?}: {e}"))))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = (0..matrix.len()).map(|i| format!("p{i}")).collect();
    FiniteMetricSpace::new("", labels, &matrix, MetricKind::Pseudometric, tol)
}

pub fn read_space(path: impl AsRef<Path>, tol: f64) -> Result<FiniteMetricSpace> {
    parse_space(&fs::read_to_string(path)?, tol)
}

pub fn space_to_json(space: &FiniteMetricSpace) -> Result<String> {
    Ok(serde_json::to_string_pretty(&SpaceFile::from(space))?)
}

pub fn read_correspondence(path: impl AsRef<Path>) -> Result<Correspondence> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductFile {
    pub c: f64,
    pub grid: Vec<f64>,
    pub points: Vec<ProductPoint>,
    pub matrix: Vec<Vec<f64>>,
}

impl From<&ProductSpace> for ProductFile {
    fn from(p: &ProductSpace) -> Self {
        Self { c: p.c(), grid: p.grid().values().to_vec(), points: p.points().to_vec(), matrix: p.matrix() }
    }
}

impl ProductFile {
    pub fn into_product(self) -> Result<ProductSpace> {
        ProductSpace::from_parts(self.c, ParamGrid::new(self.grid)?, self.points, self.matrix)
    }
}

pub fn product_to_json(product: &ProductSpace) -> Result<String> {
    Ok(serde_json::to_string(&ProductFile::from(product))?)
}

pub fn parse_product(text: &str) -> Result<ProductSpace> {
    serde_json::from_str::<ProductFile>(text)?.into_product()
}

pub fn read_product(path: impl AsRef<Path>) -> Result<ProductSpace> {
    parse_product(&fs::read_to_string(path)?)
}
