use std::f64::consts::TAU;
use std::io::{Read, Write};

use num_complex::Complex64;

use super::sets::{unit, CirclePoint};
use crate::error::{Error, Result};

/// Default grid size for boundary sampling.
pub const DEFAULT_GRID: usize = 4096;

/// Checks the grid-size precondition shared by every sampled operation.
pub fn check_grid_size(n: usize) -> Result<()> {
    if n >= 8 && n.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::GridSize(n))
    }
}

/// `θ_k = 2πk/n`, `k = 0..n`.
pub fn uniform_grid(n: usize) -> Result<Vec<CirclePoint>> {
    check_grid_size(n)?;
    Ok((0..n).map(|k| CirclePoint::new(grid_angle(k, n))).collect())
}

#[inline]
pub fn grid_angle(k: usize, n: usize) -> f64 {
    k as f64 * TAU / n as f64
}

/// `e^{iθ_k}` with exact values on the axes.
#[inline]
pub fn grid_unit(k: usize, n: usize) -> Complex64 {
    unit(grid_angle(k, n))
}

/// Sample value types carried by a [`GridFunction`].
pub trait Sample: Copy + Default + std::fmt::Debug {
    fn is_finite_sample(&self) -> bool;
    fn parts(&self) -> (f64, f64);
}

impl Sample for f64 {
    fn is_finite_sample(&self) -> bool {
        self.is_finite()
    }
    fn parts(&self) -> (f64, f64) {
        (*self, 0.0)
    }
}

impl Sample for Complex64 {
    fn is_finite_sample(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn parts(&self) -> (f64, f64) {
        (self.re, self.im)
    }
}

/// Samples on the uniform grid `θ_k = 2πk/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    values: Vec<T>,
}

pub type RealGrid = GridFunction<f64>;
pub type ComplexGrid = GridFunction<Complex64>;

impl<T: Sample> GridFunction<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        check_grid_size(values.len())?;
        if let Some(i) = values.iter().position(|v| !v.is_finite_sample()) {
            return Err(Error::NonFinite(i));
        }
        Ok(GridFunction { values })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(f64) -> T) -> Result<Self> {
        check_grid_size(n)?;
        Self::new((0..n).map(|k| f(grid_angle(k, n))).collect())
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn theta(&self, k: usize) -> f64 {
        grid_angle(k, self.n())
    }

    pub fn map<U: Sample>(&self, f: impl FnMut(&T) -> U) -> Result<GridFunction<U>> {
        GridFunction::new(self.values.iter().map(f).collect())
    }

    /// CSV with columns `k, theta, re, im`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["k", "theta", "re", "im"])?;
        for (k, v) in self.values.iter().enumerate() {
            let (re, im) = v.parts();
            wr.write_record(&[
                k.to_string(),
                format!("{:.17e}", self.theta(k)),
                format!("{re:.17e}"),
                format!("{im:.17e}"),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }
}

impl RealGrid {
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.n() as f64
    }

    pub fn constant(n: usize, c: f64) -> Result<Self> {
        Self::new(vec![c; n])
    }
}

impl ComplexGrid {
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let mut rows: Vec<(usize, Complex64)> = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let get = |i: usize| -> Result<f64> {
                rec.get(i)
                    .ok_or_else(|| Error::Parse(format!("missing column {i}")))?
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(e.to_string()))
            };
            let k = rec
                .get(0)
                .and_then(|s| s.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::Parse("bad index column".into()))?;
            rows.push((k, Complex64::new(get(2)?, get(3)?)));
        }
        rows.sort_by_key(|r| r.0);
        if rows.iter().enumerate().any(|(i, r)| r.0 != i) {
            return Err(Error::Parse("indices must be 0..n without gaps".into()));
        }
        Self::new(rows.into_iter().map(|r| r.1).collect())
    }
}
