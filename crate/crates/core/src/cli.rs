//! Scriptable front end shared by the `ghr` binary and tests.
//!
//! Exit codes: 0 success with every certificate passing, 1 verification
//! failure (the report is still produced), 2 input or validation error,
//! 3 search space over the exhaustive cap.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use crate::correspondence::{gh_distance_exact, gh_distance_heuristic, HeuristicConfig, Method};
use crate::error::{Error, Result};
use crate::geodesic::geodesic_slice;
use crate::io::{product_to_json, read_correspondence, read_product, read_space, space_to_json};
use crate::realization::{realize_geodesic, verify_product, BuildOptions, ParamGrid};
use crate::space::{hausdorff_distance, PointSubset, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_SEARCH_CAP: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Validate { space: PathBuf },
    Hausdorff { space: PathBuf, a: Vec<usize>, b: Vec<usize> },
    Dist { x: PathBuf, y: PathBuf, method: Method },
    Geodesic { x: PathBuf, y: PathBuf, t: f64, corr: Option<PathBuf> },
    Realize { x: PathBuf, y: PathBuf, corr: Option<PathBuf>, force: bool },
    Verify { product: PathBuf },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub tol: f64,
    pub grid_size: usize,
    pub seed: u64,
    pub iterations: usize,
    pub restarts: usize,
    pub c_override: Option<f64>,
    /// For `realize` the product destination; otherwise replaces stdout.
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        let heuristic = HeuristicConfig::default();
        Self {
            command,
            tol: DEFAULT_TOL,
            grid_size: 11,
            seed: heuristic.seed,
            iterations: heuristic.iterations,
            restarts: heuristic.restarts,
            c_override: None,
            output: None,
        }
    }

    fn check(&self) -> Result<()> {
        if self.grid_size < 2 {
            return Err(Error::InvalidConfig(format!("grid size {} < 2", self.grid_size)));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidConfig(format!("tolerance {} must be positive", self.tol)));
        }
        if self.iterations < 1 {
            return Err(Error::InvalidConfig("iterations must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub exit_code: i32,
    /// What goes to stdout (empty when written to `output`).
    pub stdout: String,
    pub error: Option<String>,
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::SearchSpaceTooLarge { .. } => EXIT_SEARCH_CAP,
        _ => EXIT_INPUT_ERROR,
    }
}

pub fn run(config: &RunConfig) -> RunOutcome {
    match execute(config) {
        Ok((exit_code, stdout)) => RunOutcome { exit_code, stdout, error: None },
        Err(e) => RunOutcome { exit_code: exit_code_for(&e), stdout: String::new(), error: Some(e.to_string()) },
    }
}

fn pretty(value: &impl Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn emit(config: &RunConfig, text: String) -> Result<String> {
    match &config.output {
        Some(path) => {
            write_file(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    let mut body = text.to_owned();
    body.push('\n');
    fs::write(path, body)?;
    Ok(())
}

fn execute(config: &RunConfig) -> Result<(i32, String)> {
    config.check()?;
    let tol = config.tol;
    match &config.command {
        Command::Validate { space } => {
            let s = read_space(space, tol)?;
            let (deficit, witness) = s.worst_triangle_deficit();
            let out = json!({
                "name": s.name(),
                "n": s.len(),
                "kind": s.kind(),
                "worst_triangle_deficit": deficit,
                "witness": witness,
            });
            Ok((EXIT_OK, emit(config, pretty(&out)?)?))
        }
        Command::Hausdorff { space, a, b } => {
            let s = read_space(space, tol)?;
            let sa = PointSubset::new(&s, a.iter().copied())?;
            let sb = PointSubset::new(&s, b.iter().copied())?;
            let d = hausdorff_distance(&s, &sa, &sb)?;
            let out = json!({ "a": sa.indices(), "b": sb.indices(), "hausdorff": d });
            Ok((EXIT_OK, emit(config, pretty(&out)?)?))
        }
        Command::Dist { x, y, method } => {
            let (x, y) = (read_space(x, tol)?, read_space(y, tol)?);
            let result = match method {
                Method::Exact => gh_distance_exact(&x, &y)?,
                Method::Heuristic => gh_distance_heuristic(
                    &x,
                    &y,
                    HeuristicConfig { iterations: config.iterations, seed: config.seed, restarts: config.restarts },
                ),
            };
            Ok((EXIT_OK, emit(config, pretty(&result)?)?))
        }
        Command::Geodesic { x, y, t, corr } => {
            let (x, y) = (read_space(x, tol)?, read_space(y, tol)?);
            let corr = match corr {
                Some(path) => read_correspondence(path)?,
                None => gh_distance_exact(&x, &y)?.witness,
            };
            let slice = geodesic_slice(&corr, &x, &y, *t)?;
            Ok((EXIT_OK, emit(config, space_to_json(&slice.to_space())?)?))
        }
        Command::Realize { x, y, corr, force } => {
            let (x, y) = (read_space(x, tol)?, read_space(y, tol)?);
            let corr = match corr {
                Some(path) => read_correspondence(path)?,
                None => gh_distance_exact(&x, &y)?.witness,
            };
            let grid = ParamGrid::uniform(0.0, 1.0, config.grid_size)?;
            let options = BuildOptions { tol, force: *force };
            let real = realize_geodesic(&x, &y, &corr, grid, config.c_override, options)?;
            if let Some(path) = &config.output {
                write_file(path, &product_to_json(&real.product)?)?;
            }
            let out = json!({
                "distortion": real.distortion,
                "correspondence": corr,
                "report": real.report,
            });
            let code = if real.report.passed() { EXIT_OK } else { EXIT_VERIFICATION_FAILED };
            Ok((code, pretty(&out)?))
        }
        Command::Verify { product } => {
            let prod = read_product(product)?;
            let report = verify_product(&prod, tol);
            let code = if report.passed() { EXIT_OK } else { EXIT_VERIFICATION_FAILED };
            Ok((code, emit(config, pretty(&report)?)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
        let p = dir.join(name);
        fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn rejects_bad_config() {
        let mut cfg = RunConfig::new(Command::Validate { space: "nope".into() });
        cfg.grid_size = 1;
        assert_eq!(run(&cfg).exit_code, EXIT_INPUT_ERROR);
        cfg.grid_size = 11;
        cfg.tol = 0.0;
        assert_eq!(run(&cfg).exit_code, EXIT_INPUT_ERROR);
        cfg.tol = 1e-9;
        cfg.iterations = 0;
        assert_eq!(run(&cfg).exit_code, EXIT_INPUT_ERROR);
    }

    #[test]
    fn validate_and_missing_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "s.txt", "0 1\n1 0\n");
        let out = run(&RunConfig::new(Command::Validate { space: p }));
        assert_eq!(out.exit_code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["kind"], "metric");
        assert_eq!(v["worst_triangle_deficit"], 0.0);

        let missing = run(&RunConfig::new(Command::Validate { space: dir.path().join("none") }));
        assert_eq!(missing.exit_code, EXIT_INPUT_ERROR);
        let bad = write(dir.path(), "bad.txt", "0 1 3\n1 0 1\n3 1 0\n");
        assert_eq!(run(&RunConfig::new(Command::Validate { space: bad })).exit_code, EXIT_INPUT_ERROR);
    }

    #[test]
    fn search_cap_exit_code() {
        let dir = tempfile::tempdir().unwrap();
        let six: String = (0..6)
            .map(|i| (0..6).map(|j| if i == j { "0" } else { "1" }).collect::<Vec<_>>().join(" ") + "\n")
            .collect();
        let p = write(dir.path(), "six.txt", &six);
        let out = run(&RunConfig::new(Command::Dist { x: p.clone(), y: p, method: Method::Exact }));
        assert_eq!(out.exit_code, EXIT_SEARCH_CAP);
    }

    #[test]
    fn hausdorff_command() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "line.txt", "0 1 2\n1 0 1\n2 1 0\n");
        let out = run(&RunConfig::new(Command::Hausdorff { space: p, a: vec![0], b: vec![0, 2] }));
        assert_eq!(out.exit_code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["hausdorff"], 2.0);
    }
}
