use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::circle::ClosedBoundarySet;
use crate::error::{Error, Result};

/// Measure of `E` above which `log(1/d)` is infinite on a set of positive
/// measure.
pub const POSITIVE_MEASURE: f64 = 1e-9;

/// `(1/2π)∫ log(1/d(e^{it}, E)) dt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CarlesonIntegral {
    Finite {
        value: f64,
        /// Change under the last panel doubling.
        refinement_change: f64,
    },
    Divergent {
        measure: f64,
    },
}

impl CarlesonIntegral {
    pub fn value(&self) -> Option<f64> {
        match self {
            CarlesonIntegral::Finite { value, .. } => Some(*value),
            CarlesonIntegral::Divergent { .. } => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, CarlesonIntegral::Divergent { .. })
    }
}

/// Nodes and weights of the `m`-point Gauss–Legendre rule on `[-1, 1]`.
fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    for i in 0..m {
        let mut t = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=m {
                let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = m as f64 * (t * p1 - p0) / (t * t - 1.0);
            let dt = p1 / dp;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    (x, w)
}

/// `−log(2 sin(s/2)/s)`, smooth on `[0, π]`.
fn smooth_part(s: f64) -> f64 {
    if s < 1e-8 {
        s * s / 24.0
    } else {
        -(2.0 * (s / 2.0).sin() / s).ln()
    }
}

/// `∫_0^x −log(2 sin(s/2)) ds` for `0 < x ≤ π`, with the `−log s` singularity
/// integrated exactly. Returns the value and the change under the last
/// doubling of the panel count.
fn half_arc_integral(x: f64, rule: &(Vec<f64>, Vec<f64>)) -> (f64, f64) {
    let composite = |panels: usize| -> f64 {
        let h = x / panels as f64;
        let mut acc = 0.0;
        for p in 0..panels {
            let mid = (p as f64 + 0.5) * h;
            for (t, wt) in rule.0.iter().zip(&rule.1) {
                acc += wt * smooth_part(mid + 0.5 * h * t);
            }
        }
        acc * 0.5 * h
    };
    let singular = x * (1.0 - x.ln());
    let mut panels = 1;
    let mut prev = composite(panels);
    let mut change = f64::INFINITY;
    while panels < 1024 {
        panels *= 2;
        let next = composite(panels);
        change = (next - prev).abs();
        prev = next;
        if change <= 1e-15 * prev.abs().max(1.0) {
            break;
        }
    }
    (singular + prev, change)
}

/// Arc-by-arc evaluation: on a complementary arc of length `L` the distance
/// to `E` is the chord to the nearer endpoint, so the arc contributes
/// `2∫_0^{L/2} −log(2 sin(s/2)) ds`.
pub fn carleson_integral(e: &ClosedBoundarySet) -> Result<CarlesonIntegral> {
    if e.is_empty() {
        return Err(Error::EmptySet);
    }
    let measure = e.measure();
    if measure > POSITIVE_MEASURE {
        return Ok(CarlesonIntegral::Divergent { measure });
    }
    let rule = gauss_legendre(16);
    let mut value = 0.0;
    let mut change: f64 = 0.0;
    for arc in e.complementary_arcs() {
        let (v, c) = half_arc_integral(arc.length() / 2.0, &rule);
        value += 2.0 * v;
        change = change.max(2.0 * c);
    }
    Ok(CarlesonIntegral::Finite {
        value: value / TAU,
        refinement_change: change / TAU,
    })
}

/// Independent check: midpoint rule on a mesh graded toward each arc endpoint,
/// `cells` cells per half arc.
pub fn carleson_quadrature(e: &ClosedBoundarySet, cells: usize) -> Result<CarlesonIntegral> {
    if e.is_empty() {
        return Err(Error::EmptySet);
    }
    let measure = e.measure();
    if measure > POSITIVE_MEASURE {
        return Ok(CarlesonIntegral::Divergent { measure });
    }
    let grade = 4.0;
    let mut total = 0.0;
    for arc in e.complementary_arcs() {
        let x = arc.length() / 2.0;
        let mut half = 0.0;
        for j in 0..cells {
            let a = x * (j as f64 / cells as f64).powf(grade);
            let b = x * ((j + 1) as f64 / cells as f64).powf(grade);
            let m = 0.5 * (a + b);
            half += (b - a) * -(2.0 * (m / 2.0).sin()).ln();
        }
        total += 2.0 * half;
    }
    Ok(CarlesonIntegral::Finite {
        value: total / TAU,
        refinement_change: f64::NAN,
    })
}
