//! Poisson and Herglotz integrals and the conjugate function on the grid.
//!
//! All three operate on the trigonometric interpolant of the samples. For
//! band-limited data this coincides with the trapezoidal rule applied to the
//! Poisson/Herglotz kernels; for general data it avoids the kernel aliasing
//! that the trapezoidal rule suffers as `|z| → 1`.

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::grid::RealGrid;
use crate::error::{Error, Result};

/// Discrete Fourier coefficients `c_k = (1/n) Σ_j u_j e^{-ikθ_j}` of a real grid
/// function, for `k = 0..=n/2`.
pub fn fourier_coefficients(u: &RealGrid) -> Vec<Complex64> {
    let n = u.n();
    let mut buf: Vec<Complex64> = u.values().iter().map(|&x| Complex64::new(x, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.truncate(n / 2 + 1);
    for c in &mut buf {
        *c *= scale;
    }
    buf
}

/// The conjugate function: spectral multiplier `−i·sgn(k)`, with the constant
/// and Nyquist modes mapped to zero.
pub fn conjugate_samples(u: &RealGrid) -> RealGrid {
    let n = u.n();
    let mut buf: Vec<Complex64> = u.values().iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);
    let half = n / 2;
    buf[0] = Complex64::new(0.0, 0.0);
    buf[half] = Complex64::new(0.0, 0.0);
    for (k, c) in buf.iter_mut().enumerate() {
        if k > 0 && k < half {
            *c *= Complex64::new(0.0, -1.0);
        } else if k > half {
            *c *= Complex64::new(0.0, 1.0);
        }
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    RealGrid::new(buf.iter().map(|c| c.re * scale).collect())
        .expect("inverse transform of finite data is finite")
}

/// Largest `|z|` accepted for interior evaluation on an `n`-point grid.
pub fn quadrature_guard(n: usize) -> f64 {
    1.0 - 1.0 / n as f64
}

pub(crate) fn check_guard(z: Complex64, n: usize) -> Result<()> {
    let guard = quadrature_guard(n);
    let r = z.norm();
    if r > guard || !r.is_finite() {
        return Err(Error::QuadratureAccuracy {
            modulus: r,
            guard,
            n,
        });
    }
    Ok(())
}

/// Precomputed analytic completion of a real grid function: the Herglotz
/// integral `(1/2π)∫ (e^{iθ}+z)/(e^{iθ}−z) u(θ) dθ` as a power series in `z`.
#[derive(Debug, Clone)]
pub struct HarmonicExtension {
    n: usize,
    // b_0 = c_0, b_k = 2 c_k for 0 < k < n/2, b_{n/2} = c_{n/2}
    series: Vec<Complex64>,
}

impl HarmonicExtension {
    pub fn new(u: &RealGrid) -> Self {
        let n = u.n();
        let c = fourier_coefficients(u);
        let half = n / 2;
        let series = c
            .iter()
            .enumerate()
            .map(|(k, &ck)| if k == 0 || k == half { ck } else { 2.0 * ck })
            .collect();
        HarmonicExtension { n, series }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Herglotz integral at `z`, subject to the quadrature guard.
    pub fn herglotz(&self, z: Complex64) -> Result<Complex64> {
        check_guard(z, self.n)?;
        Ok(self.herglotz_unchecked(z))
    }

    /// Poisson integral (real part of the Herglotz integral).
    pub fn poisson(&self, z: Complex64) -> Result<f64> {
        self.herglotz(z).map(|h| h.re)
    }

    pub(crate) fn herglotz_unchecked(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for b in self.series.iter().rev() {
            acc = acc * z + b;
        }
        acc
    }

    /// Mean of the samples (the value at `z = 0`).
    pub fn mean(&self) -> f64 {
        self.series[0].re
    }
}

/// `(1/2π)∫ (1−|z|²)/|e^{iθ}−z|² u(θ) dθ`.
pub fn poisson_transform(u: &RealGrid, z: Complex64) -> Result<f64> {
    check_guard(z, u.n())?;
    HarmonicExtension::new(u).poisson(z)
}

/// `(1/2π)∫ (e^{iθ}+z)/(e^{iθ}−z) u(θ) dθ`.
pub fn herglotz_transform(u: &RealGrid, z: Complex64) -> Result<Complex64> {
    check_guard(z, u.n())?;
    HarmonicExtension::new(u).herglotz(z)
}
