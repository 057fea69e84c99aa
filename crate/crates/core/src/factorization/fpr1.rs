use std::f64::consts::TAU;
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use super::outer_part;
use crate::boundary::BoundaryFunction;
use crate::circle::{quadrature_guard, unit};
use crate::error::{Error, Result};
use crate::moduli::Modulus;

/// Default constant `A` in `|O_f(z)| ≤ o(ω(1−|z|)) + A|f(z/|z|)|`.
pub const DEFAULT_FPR1_A: f64 = 8.0;

/// Default number of directions `ξ`.
pub const DEFAULT_DIRECTIONS: usize = 64;

/// `r(ρ, ξ) = max(0, |O_f(ρξ)| − A|f(ξ)|)/ω(1−ρ)`, one row per radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fpr1Table {
    pub a: f64,
    pub radii: Vec<f64>,
    pub thetas: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
}

impl Fpr1Table {
    pub fn row_maxima(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.iter().copied().fold(0.0, f64::max)).collect()
    }

    /// Row maxima are nonincreasing as `ρ ↑ 1`.
    pub fn decreasing(&self) -> bool {
        self.row_maxima().windows(2).all(|w| w[1] <= w[0])
    }

    /// CSV with columns `rho, theta, r`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(out);
        wr.write_record(["rho", "theta", "r"])?;
        for (rho, row) in self.radii.iter().zip(&self.rows) {
            for (t, r) in self.thetas.iter().zip(row) {
                wr.write_record(&[format!("{rho:.17e}"), format!("{t:.17e}"), format!("{r:.17e}")])?;
            }
        }
        wr.flush()?;
        Ok(())
    }
}

pub fn fpr1_profile(f: &BoundaryFunction, w: &Modulus, radii: &[f64]) -> Result<Fpr1Table> {
    fpr1_profile_with(f, w, radii, DEFAULT_FPR1_A, DEFAULT_DIRECTIONS)
}

/// Radii must increase within `[1/4, 1 − 1/n]`; the disk `|z| < 1/4` is
/// excluded from radial comparisons.
pub fn fpr1_profile_with(
    f: &BoundaryFunction,
    w: &Modulus,
    radii: &[f64],
    a: f64,
    directions: usize,
) -> Result<Fpr1Table> {
    let eval = f.evaluator().ok_or(Error::NoEvaluator("fpr1_profile"))?;
    if radii.is_empty() || directions == 0 {
        return Err(Error::InvalidArgument {
            arg: "radii",
            reason: "need at least one radius and one direction".into(),
        });
    }
    if let Some(i) = radii.windows(2).position(|r| r[1] <= r[0]) {
        return Err(Error::NonMonotone(i + 1));
    }
    let guard = quadrature_guard(f.n());
    for &rho in radii {
        if !(rho >= 0.25) {
            return Err(Error::InvalidArgument {
                arg: "radii",
                reason: format!("{rho} is inside the excluded disk |z| < 1/4"),
            });
        }
        if rho > guard {
            return Err(Error::QuadratureAccuracy {
                modulus: rho,
                guard,
                n: f.n(),
            });
        }
    }
    let outer = outer_part(f)?;
    let thetas: Vec<f64> = (0..directions).map(|j| TAU * j as f64 / directions as f64).collect();
    let mut rows = Vec::with_capacity(radii.len());
    for &rho in radii {
        let scale = w.eval_positive(1.0 - rho)?;
        let mut row = Vec::with_capacity(directions);
        for &t in &thetas {
            let xi = unit(t);
            let o = outer.eval(xi * rho)?.norm();
            let fx = eval(xi).norm();
            row.push((o - a * fx).max(0.0) / scale);
        }
        rows.push(row);
    }
    Ok(Fpr1Table {
        a,
        radii: radii.to_vec(),
        thetas,
        rows,
    })
}

/// `|O_f(ρξ)|` for reporting alongside the table.
pub fn outer_modulus(f: &BoundaryFunction, z: Complex64) -> Result<f64> {
    Ok(outer_part(f)?.eval(z)?.norm())
}
