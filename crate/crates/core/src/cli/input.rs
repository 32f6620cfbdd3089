//! Reading inputs: built-in functions, coefficient JSON and sampled CSV.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::basis::{analyze, analyze_grid, BesselBasis, GridFunction, Quadrature, SpectralField};

/// Built-in test functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    /// x⁴(1−x)³
    Poly43,
    /// x⁴(1−x)⁴
    Poly44,
    /// x²(1−x)
    Poly21,
    /// J₀(λ_k x), given by its exact coefficients
    Mode(usize),
    Zero,
}

impl Builtin {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        Ok(match name {
            "poly43" => Self::Poly43,
            "poly44" => Self::Poly44,
            "poly21" => Self::Poly21,
            "zero" => Self::Zero,
            _ => match name.strip_prefix("mode:").map(str::parse::<usize>) {
                Some(Ok(k)) if k >= 1 => Self::Mode(k),
                _ => {
                    return Err(CliError::Config(format!(
                        "--func: unknown function {name:?} (expected poly43, poly44, poly21, mode:<k>, zero)"
                    )))
                }
            },
        })
    }

    pub fn eval(self, x: f64) -> Option<f64> {
        match self {
            Self::Poly43 => Some(x.powi(4) * (1.0 - x).powi(3)),
            Self::Poly44 => Some(x.powi(4) * (1.0 - x).powi(4)),
            Self::Poly21 => Some(x * x * (1.0 - x)),
            Self::Zero => Some(0.0),
            Self::Mode(_) => None,
        }
    }

    pub fn coefficients(self, basis: &BesselBasis, quad: &Quadrature) -> Result<SpectralField, CliError> {
        let field = match self {
            Self::Mode(k) if k > basis.size() => {
                return Err(CliError::Config(format!(
                    "--func: mode:{k} exceeds the basis size {}",
                    basis.size()
                )))
            }
            Self::Mode(k) => SpectralField::unit(k, basis.size()),
            other => analyze(|x| other.eval(x).expect("pointwise builtin"), basis, quad),
        };
        field.map_err(|e| CliError::Numerical(e.to_string()))
    }
}

/// One entry of a coefficients file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientRecord {
    pub k: usize,
    pub lambda_k: f64,
    pub coeff: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridRecord {
    x: f64,
    value: f64,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Coefficient list, zero-padded or truncated to `size` modes.
pub fn read_coefficients(path: &Path, size: usize) -> Result<SpectralField, CliError> {
    let text = read(path)?;
    let records: Vec<CoefficientRecord> = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let mut coeffs = vec![0.0; size];
    let mut seen = vec![false; size];
    for r in &records {
        if r.k == 0 {
            return Err(CliError::Parse(format!("{}: mode index k starts at 1", path.display())));
        }
        if !r.coeff.is_finite() {
            return Err(CliError::Parse(format!("{}: coefficient k={} is not finite", path.display(), r.k)));
        }
        if r.k <= size {
            if seen[r.k - 1] {
                return Err(CliError::Parse(format!("{}: duplicate mode k={}", path.display(), r.k)));
            }
            seen[r.k - 1] = true;
            coeffs[r.k - 1] = r.coeff;
        }
    }
    if records.is_empty() {
        return Err(CliError::Parse(format!("{}: no coefficients", path.display())));
    }
    SpectralField::new(coeffs).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Samples from a CSV file with header `x,value`.
pub fn read_grid(path: &Path) -> Result<GridFunction, CliError> {
    let text = read(path)?;
    let parse_err = |e: &dyn std::fmt::Display| CliError::Parse(format!("{}: {e}", path.display()));
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| parse_err(&e))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["x", "value"] {
        return Err(parse_err(&format!("expected header `x,value`, found `{}`", headers.iter().collect::<Vec<_>>().join(","))));
    }
    let mut nodes = Vec::new();
    let mut values = Vec::new();
    for row in reader.deserialize::<GridRecord>() {
        let row = row.map_err(|e| parse_err(&e))?;
        nodes.push(row.x);
        values.push(row.value);
    }
    GridFunction::new(nodes, values).map_err(|e| parse_err(&e))
}

/// Resolves an input source to `size` coefficients.
pub fn load(given: &str, flag: &str, basis: &BesselBasis, quad: &Quadrature) -> Result<SpectralField, CliError> {
    if let Some(name) = given.strip_prefix("func:") {
        return Builtin::parse(name)?.coefficients(basis, quad);
    }
    let path = Path::new(given);
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => read_coefficients(path, basis.size()),
        Some("csv") => {
            let grid = read_grid(path)?;
            analyze_grid(&grid, basis, quad).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
        }
        _ => Err(CliError::Config(format!(
            "{flag}: {given:?} is neither func:<name> nor a .json or .csv file"
        ))),
    }
}
