//! Parsers for the command-line input specs.

use std::fs;
use std::path::Path;

use crate::boundary::{builtin, BoundaryFunction};
use crate::circle::{CirclePoint, ClosedBoundarySet, ComplexGrid};
use crate::error::{Error, Result};
use crate::factorization::InnerFunction;

/// `oneminusz`, `z`, `poly:..`, `power:β`, `const:c`, or `csv:path` for
/// boundary samples in `k, theta, re, im` form.
pub fn function(spec: &str, n: usize) -> Result<BoundaryFunction> {
    if let Some(path) = spec.strip_prefix("csv:") {
        let file = fs::File::open(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
        let g = ComplexGrid::read_csv(file)?;
        if g.n() != n {
            return Err(Error::GridMismatch { expected: n, got: g.n() });
        }
        return Ok(BoundaryFunction::from_samples(spec, g));
    }
    builtin::parse(spec, n)
}

/// `points:1,-1,i`, `angles:0,3.14`, `full`, `empty` or `json:path`.
pub fn closed_set(spec: &str) -> Result<ClosedBoundarySet> {
    match spec.split_once(':') {
        Some(("points", list)) => {
            let pts = list
                .split(',')
                .map(|s| {
                    let z = builtin::parse_complex(s)?;
                    if z.norm() == 0.0 {
                        return Err(Error::Parse("point 0 is not on the circle".into()));
                    }
                    Ok(CirclePoint::from_complex(z))
                })
                .collect::<Result<Vec<_>>>()?;
            ClosedBoundarySet::from_points(&pts)
        }
        Some(("angles", list)) => {
            let angles = list
                .split(',')
                .map(|s| s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad angle `{s}`"))))
                .collect::<Result<Vec<_>>>()?;
            ClosedBoundarySet::from_angles(&angles)
        }
        Some(("json", path)) => Ok(serde_json::from_str(&read(path)?)?),
        None if spec == "full" => Ok(ClosedBoundarySet::full()),
        None if spec == "empty" => Ok(ClosedBoundarySet::empty()),
        _ => Err(Error::Parse(format!("unknown set spec `{spec}`"))),
    }
}

/// Inline JSON `{"zeros": [...], "atoms": [...]}`, `json:path`, or `trivial`.
pub fn inner(spec: &str) -> Result<InnerFunction> {
    if spec == "trivial" {
        return Ok(InnerFunction::trivial());
    }
    let text = match spec.strip_prefix("json:") {
        Some(path) => read(path)?,
        None => spec.to_string(),
    };
    Ok(serde_json::from_str(&text)?)
}

pub fn read(path: &str) -> Result<String> {
    fs::read_to_string(Path::new(path)).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

/// Comma-separated reals.
pub fn reals(list: &str) -> Result<Vec<f64>> {
    list.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number `{s}`"))))
        .collect()
}
