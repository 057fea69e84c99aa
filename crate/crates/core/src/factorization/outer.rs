//! Outer functions from boundary log-modulus samples.
//!
//! A grid node where `|f|` vanishes (`log|f| < −50`, including `−∞`) is
//! treated as a logarithmic singularity `β·log|e^{iθ} − e^{iθ_i}|` when its
//! neighbours allow a local fit. The singular terms are carried analytically
//! (`β log(1 − z e^{−iθ_i})` in the interior, a sawtooth in the conjugate), and
//! only the smooth remainder goes through the FFT. Nodes that cannot be fitted
//! are clipped to `−50`. Either way the node is recorded in the clip mask.

use std::f64::consts::{PI, TAU};
use std::io::Write;

use num_complex::Complex64;

use super::InnerFunction;
use crate::boundary::BoundaryFunction;
use crate::circle::{
    check_grid_size, check_guard, conjugate_samples, grid_angle, grid_unit, unit, ComplexGrid,
    HarmonicExtension, RealGrid,
};
use crate::error::{Error, Result};

/// Log-modulus floor below which a grid value is masked.
pub const CLIP_FLOOR: f64 = -50.0;

/// Neighbours on each side used by the singularity fit.
const FIT_REACH: usize = 3;

/// A term `coeff · log|e^{iθ} − e^{iθ_index}|` of the log-modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogSingularity {
    pub index: usize,
    pub coeff: f64,
}

/// `O(z) = exp{(1/2π)∫ (e^{iθ}+z)/(e^{iθ}−z) u(θ) dθ}` for sampled `u`.
#[derive(Debug, Clone)]
pub struct OuterFunction {
    singular: Vec<LogSingularity>,
    remainder: RealGrid,
    extension: HarmonicExtension,
    log_modulus: RealGrid,
    conjugate: RealGrid,
    mask: Vec<bool>,
}

/// `log|2 sin(πd/n)|`, with the diagonal entry `−log n` that makes the grid sum
/// vanish.
fn log_kernel(n: usize) -> Vec<f64> {
    (0..n)
        .map(|d| {
            if d == 0 {
                -(n as f64).ln()
            } else {
                (2.0 * (PI * d as f64 / n as f64).sin()).ln()
            }
        })
        .collect()
}

/// Boundary conjugate of `log|1 − e^{iθ}|`: `(θ − π)/2` on `(0, 2π)`.
fn sawtooth(d: usize, n: usize) -> f64 {
    if d == 0 {
        0.0
    } else {
        (grid_angle(d, n) - PI) / 2.0
    }
}

/// Fits `A_k = β L_k + c + c₂(kh)²` to the symmetric averages of the
/// neighbours of `i`. Returns `(β, c)`.
fn fit_singularity(u: &[f64], i: usize, kernel: &[f64]) -> Option<(f64, f64)> {
    let n = u.len();
    let h = TAU / n as f64;
    let mut m = [[0.0f64; 4]; 3];
    for k in 1..=FIT_REACH {
        let a = 0.5 * (u[(i + k) % n] + u[(i + n - k) % n]);
        m[k - 1] = [kernel[k], 1.0, (k as f64 * h).powi(2), a];
    }
    // Gaussian elimination with partial pivoting on the 3×3 system.
    for col in 0..3 {
        let piv = (col..3).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        m.swap(col, piv);
        if m[col][col] == 0.0 {
            return None;
        }
        for row in 0..3 {
            if row != col {
                let f = m[row][col] / m[col][col];
                for j in col..4 {
                    m[row][j] -= f * m[col][j];
                }
            }
        }
    }
    let beta = m[0][3] / m[0][0];
    let c = m[1][3] / m[1][1];
    (beta.is_finite() && beta > 0.0 && c.is_finite()).then_some((beta, c))
}

impl OuterFunction {
    fn from_parts(singular: Vec<LogSingularity>, remainder: RealGrid, mask: Vec<bool>) -> Result<Self> {
        let n = remainder.n();
        let r = remainder.values();
        let mut log_mod = r.to_vec();
        let mut conj = conjugate_samples(&remainder).into_values();
        if !singular.is_empty() {
            let kernel = log_kernel(n);
            for s in &singular {
                for k in 0..n {
                    let d = (k + n - s.index) % n;
                    log_mod[k] += s.coeff * kernel[d];
                    conj[k] += s.coeff * sawtooth(d, n);
                }
            }
        }
        Ok(OuterFunction {
            extension: HarmonicExtension::new(&remainder),
            log_modulus: RealGrid::new(log_mod)?,
            conjugate: RealGrid::new(conj)?,
            singular,
            remainder,
            mask,
        })
    }

    pub fn n(&self) -> usize {
        self.remainder.n()
    }

    /// Log-modulus samples used by the reconstruction. Masked nodes hold the
    /// regularized value, so the grid mean equals `log|O(0)|`.
    pub fn log_modulus(&self) -> &RealGrid {
        &self.log_modulus
    }

    pub fn conjugate(&self) -> &RealGrid {
        &self.conjugate
    }

    pub fn singularities(&self) -> &[LogSingularity] {
        &self.singular
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn masked_indices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&k| self.mask[k]).collect()
    }

    /// `log O(z)` for `|z| ≤ 1 − 1/n`.
    pub fn log_eval(&self, z: Complex64) -> Result<Complex64> {
        check_guard(z, self.n())?;
        Ok(self.log_eval_unchecked(z))
    }

    fn log_eval_unchecked(&self, z: Complex64) -> Complex64 {
        let n = self.n();
        let mut acc = self.extension.herglotz_unchecked(z);
        for s in &self.singular {
            let e = unit(grid_angle(s.index, n)).conj();
            acc += s.coeff * (1.0 - z * e).ln();
        }
        acc
    }

    /// `O(z)` for `|z| ≤ 1 − 1/n`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.log_eval(z).map(|l| l.exp())
    }

    /// `O(e^{iθ_k}) = exp(u_k + i ũ_k)`; `0` at masked nodes.
    pub fn boundary_value(&self, k: usize) -> Complex64 {
        if self.mask[k] {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::new(self.log_modulus.values()[k], self.conjugate.values()[k]).exp()
    }

    pub fn boundary_values(&self) -> ComplexGrid {
        ComplexGrid::new((0..self.n()).map(|k| self.boundary_value(k)).collect())
            .expect("outer boundary values are finite")
    }

    /// Boundary values as a boundary-only function.
    pub fn to_boundary_function(&self, name: impl Into<String>) -> BoundaryFunction {
        BoundaryFunction::from_samples(name, self.boundary_values())
    }

    /// `log|O(0)|`.
    pub fn log_abs_at_origin(&self) -> f64 {
        self.extension.mean()
    }

    /// The outer function of `u·w` for cell weights `w ∈ [0, 1]`.
    ///
    /// Splitting `w·log|e^{iθ} − e^{iθ_i}|` as `w_i·(singular term)` plus a
    /// bounded grid term keeps the construction additive in `w`.
    pub fn weighted(&self, weights: &[f64]) -> Result<OuterFunction> {
        let n = self.n();
        if weights.len() != n {
            return Err(Error::GridMismatch {
                expected: n,
                got: weights.len(),
            });
        }
        let mut rem: Vec<f64> = self
            .remainder
            .values()
            .iter()
            .zip(weights)
            .map(|(r, w)| r * w)
            .collect();
        let mut singular = Vec::new();
        if !self.singular.is_empty() {
            let kernel = log_kernel(n);
            for s in &self.singular {
                let wi = weights[s.index];
                for k in 0..n {
                    rem[k] += s.coeff * kernel[(k + n - s.index) % n] * (weights[k] - wi);
                }
                if wi > 0.0 {
                    singular.push(LogSingularity {
                        index: s.index,
                        coeff: s.coeff * wi,
                    });
                }
            }
        }
        let mask = self.mask.iter().zip(weights).map(|(&m, &w)| m && w > 0.0).collect();
        Self::from_parts(singular, RealGrid::new(rem)?, mask)
    }

    /// CSV with columns `k, theta, u, u_conjugate, clipped_flag`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(out);
        wr.write_record(["k", "theta", "u", "u_conjugate", "clipped_flag"])?;
        for k in 0..self.n() {
            wr.write_record(&[
                k.to_string(),
                format!("{:.17e}", grid_angle(k, self.n())),
                format!("{:.17e}", self.log_modulus.values()[k]),
                format!("{:.17e}", self.conjugate.values()[k]),
                (self.mask[k] as u8).to_string(),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }
}

/// Builds the outer function with boundary log-modulus `u`. Entries may be
/// `−∞`; `+∞` and NaN are rejected.
pub fn outer_from_log_modulus(u: &[f64]) -> Result<OuterFunction> {
    let n = u.len();
    check_grid_size(n)?;
    for (i, &x) in u.iter().enumerate() {
        if x.is_nan() {
            return Err(Error::NonFinite(i));
        }
        if x == f64::INFINITY {
            return Err(Error::UnboundedModulus(i));
        }
    }
    let mask: Vec<bool> = u.iter().map(|&x| x < CLIP_FLOOR).collect();
    if mask.iter().all(|&m| m) {
        return Err(Error::ZeroFunction);
    }
    let kernel = log_kernel(n);
    let mut singular = Vec::new();
    let mut smooth_at = Vec::new();
    let mut clipped: Vec<f64> = u.iter().map(|&x| x.max(CLIP_FLOOR)).collect();
    for i in (0..n).filter(|&i| mask[i]) {
        let isolated = (1..=FIT_REACH).all(|k| !mask[(i + k) % n] && !mask[(i + n - k) % n]);
        let fit = if isolated { fit_singularity(u, i, &kernel) } else { None };
        match fit {
            Some((beta, c)) => {
                singular.push(LogSingularity { index: i, coeff: beta });
                smooth_at.push(c);
            }
            None => log::debug!("clipping log-modulus at index {i}"),
        }
    }
    for (s, &c) in singular.iter().zip(&smooth_at) {
        clipped[s.index] = c;
    }
    // remainder = u − Σ β·L(θ − θ_i), with the fitted smooth value at each node
    let mut rem = clipped;
    for s in &singular {
        for k in 0..n {
            if k != s.index {
                rem[k] -= s.coeff * kernel[(k + n - s.index) % n];
            }
        }
    }
    OuterFunction::from_parts(singular, RealGrid::new(rem)?, mask)
}

/// `log|f|` on the grid (`−∞` at exact zeros).
pub fn log_modulus_of(f: &BoundaryFunction) -> Vec<f64> {
    f.values().iter().map(|v| v.norm().ln()).collect()
}

/// The outer factor `O_f`.
pub fn outer_part(f: &BoundaryFunction) -> Result<OuterFunction> {
    outer_from_log_modulus(&log_modulus_of(f))
}

/// Boundary values of `U_f = f/O_f` with diagnostics.
#[derive(Debug, Clone)]
pub struct InnerPart {
    pub values: BoundaryFunction,
    pub outer: OuterFunction,
    /// Masked nodes, filled from the nearest unmasked neighbour.
    pub flagged: Vec<usize>,
    /// `max ||U| − 1|` over unmasked nodes at chordal distance at least the
    /// exclusion radius from every masked node.
    pub max_deviation: f64,
}

/// `U_f = f/O_f` on the grid. Deviations from unimodularity are reported over
/// unmasked nodes at chordal distance `≥ exclusion` from the masked ones.
pub fn inner_part(f: &BoundaryFunction, exclusion: f64) -> Result<InnerPart> {
    if f.values().iter().all(|v| v.norm() == 0.0) {
        return Err(Error::ZeroFunction);
    }
    let outer = outer_part(f)?;
    let n = f.n();
    let mask = outer.mask();
    let mut vals: Vec<Complex64> = (0..n)
        .map(|k| if mask[k] { Complex64::new(0.0, 0.0) } else { f.values()[k] / outer.boundary_value(k) })
        .collect();
    let flagged = outer.masked_indices();
    for &k in &flagged {
        vals[k] = vals[nearest_unmasked(mask, k)];
    }
    let mut max_deviation: f64 = 0.0;
    for k in (0..n).filter(|&k| !mask[k]) {
        let far = flagged
            .iter()
            .all(|&j| (grid_unit(k, n) - grid_unit(j, n)).norm() >= exclusion);
        if far {
            max_deviation = max_deviation.max((vals[k].norm() - 1.0).abs());
        }
    }
    Ok(InnerPart {
        values: BoundaryFunction::from_samples(format!("U[{}]", f.name()), ComplexGrid::new(vals)?),
        outer,
        flagged,
        max_deviation,
    })
}

/// Nearest index with `mask == false`, preferring the preceding side.
pub(crate) fn nearest_unmasked(mask: &[bool], k: usize) -> usize {
    let n = mask.len();
    for s in 1..n {
        let left = (k + n - s) % n;
        if !mask[left] {
            return left;
        }
        let right = (k + s) % n;
        if !mask[right] {
            return right;
        }
    }
    k
}

/// `max ||U(e^{iθ_k})| − 1|` over grid nodes at chordal distance at least
/// `atom_exclusion` from every atom.
pub fn unimodular_deviation(u: &InnerFunction, n: usize, atom_exclusion: f64) -> Result<f64> {
    let vals = u.boundary_values(n)?;
    let mut worst: f64 = 0.0;
    for (k, v) in vals.values().iter().enumerate() {
        let p = crate::circle::CirclePoint::new(grid_angle(k, n));
        if u.singular.atoms().iter().any(|a| a.0.chord(p) < atom_exclusion) {
            continue;
        }
        worst = worst.max((v.norm() - 1.0).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::builtin;
    use crate::factorization::{blaschke_eval, ZeroList};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_log_modulus() {
        let o = outer_from_log_modulus(&vec![3f64.ln(); 64]).unwrap();
        for z in [c(0.0, 0.0), c(0.5, 0.5), c(-0.9, 0.0)] {
            assert!((o.eval(z).unwrap() - c(3.0, 0.0)).norm() < 1e-13);
        }
        assert!((o.boundary_value(5) - c(3.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn one_minus_z_is_recovered() {
        let f = builtin::one_minus_z(4096).unwrap();
        let o = outer_part(&f).unwrap();
        assert_eq!(o.masked_indices(), vec![0]);
        assert_eq!(o.singularities().len(), 1);
        assert!((o.singularities()[0].coeff - 1.0).abs() < 1e-12);
        for z in [c(0.0, 0.0), c(0.9, 0.0), c(0.3, -0.7), c(-0.6, 0.6)] {
            let v = o.eval(z).unwrap();
            assert!((v.norm() / (1.0 - z).norm() - 1.0).abs() < 1e-10);
        }
        assert!(o.log_abs_at_origin().abs() < 1e-12);
        assert!((o.log_abs_at_origin() - o.log_modulus().mean()).abs() < 1e-12);
        for k in [1, 7, 2048, 4095] {
            let b = o.boundary_value(k);
            assert!((b - f.values()[k]).norm() < 1e-10 * f.values()[k].norm());
        }
    }

    #[test]
    fn fractional_power_singularity() {
        let f = builtin::power(1024, 0.5).unwrap();
        let o = outer_part(&f).unwrap();
        assert!((o.singularities()[0].coeff - 0.5).abs() < 1e-9);
        let z = c(0.5, 0.2);
        assert!((o.eval(z).unwrap() - (1.0 - z).sqrt()).norm() < 1e-8);
    }

    #[test]
    fn rejects_bad_log_modulus() {
        let mut u = vec![0.0; 16];
        u[2] = f64::INFINITY;
        assert_eq!(outer_from_log_modulus(&u).unwrap_err(), Error::UnboundedModulus(2));
        u[2] = f64::NAN;
        assert_eq!(outer_from_log_modulus(&u).unwrap_err(), Error::NonFinite(2));
        assert!(outer_from_log_modulus(&vec![f64::NEG_INFINITY; 16]).is_err());
    }

    #[test]
    fn clustered_zeros_fall_back_to_clipping() {
        let mut u = vec![0.0; 64];
        u[10] = -80.0;
        u[11] = -70.0;
        let o = outer_from_log_modulus(&u).unwrap();
        assert!(o.singularities().is_empty());
        assert_eq!(o.masked_indices(), vec![10, 11]);
        assert_eq!(o.log_modulus().values()[10], CLIP_FLOOR);
    }

    #[test]
    fn inner_part_of_outer_and_blaschke() {
        let f = builtin::one_minus_z(1024).unwrap();
        let ip = inner_part(&f, 0.0).unwrap();
        assert!(ip.max_deviation < 1e-10);
        assert_eq!(ip.flagged, vec![0]);

        let g = builtin::polynomial(1024, vec![c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let ip = inner_part(&g, 0.0).unwrap();
        for k in [3, 100, 700] {
            let want = grid_unit(k, 1024);
            assert!((ip.values.values()[k] - want).norm() < 1e-9);
        }
        let e = BoundaryFunction::closed_form("z", 64, |z| z).unwrap();
        let ip = inner_part(&e, 0.0).unwrap();
        assert!(ip.outer.log_modulus().values().iter().all(|v| v.abs() < 1e-15));
        assert!((ip.values.values()[9] - grid_unit(9, 64)).norm() < 1e-14);
    }

    #[test]
    fn blaschke_times_outer() {
        let zl = ZeroList::simple(&[c(0.5, 0.1), c(-0.3, 0.7)]).unwrap();
        let f = BoundaryFunction::closed_form("Bf", 2048, move |z| blaschke_eval(&zl, z) * (1.0 - z)).unwrap();
        let ip = inner_part(&f, 0.0).unwrap();
        assert!(ip.max_deviation < 1e-9, "{}", ip.max_deviation);
    }

    #[test]
    fn weights_are_additive() {
        let f = builtin::power(512, 1.0).unwrap().mul(&builtin::parse("poly:2,0.5", 512).unwrap()).unwrap();
        let o = outer_part(&f).unwrap();
        let w: Vec<f64> = (0..512).map(|k| if k < 100 || k > 400 { 1.0 } else if k == 100 { 0.3 } else { 0.0 }).collect();
        let wc: Vec<f64> = w.iter().map(|x| 1.0 - x).collect();
        let a = o.weighted(&w).unwrap();
        let b = o.weighted(&wc).unwrap();
        for k in 1..512 {
            let p = a.boundary_value(k) * b.boundary_value(k);
            assert!((p - o.boundary_value(k)).norm() <= 1e-10 * o.boundary_value(k).norm());
        }
        let full = o.weighted(&vec![1.0; 512]).unwrap();
        assert!((full.eval(c(0.2, 0.3)).unwrap() - o.eval(c(0.2, 0.3)).unwrap()).norm() < 1e-13);
        let none = o.weighted(&vec![0.0; 512]).unwrap();
        assert!((none.eval(c(0.2, 0.3)).unwrap() - c(1.0, 0.0)).norm() < 1e-13);
        assert!((none.boundary_value(0) - c(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn csv_columns() {
        let o = outer_part(&builtin::one_minus_z(8).unwrap()).unwrap();
        let mut buf = Vec::new();
        o.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("k,theta,u,u_conjugate,clipped_flag\n0,"));
        assert!(text.lines().nth(1).unwrap().ends_with(",1"));
    }
}
