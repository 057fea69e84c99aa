//! `‖f‖_ω = ‖f‖_∞ + sup |f(z) − f(w)| / ω(|z − w|)`, estimated over a
//! deterministic pair set.
//!
//! The pair set is structured (every grid pair at a dyadic index offset,
//! adjacent pairs included) plus a seeded batch of pseudo-random pairs. Random
//! pairs are drawn from the closed disk when the function has an evaluator and
//! from the boundary grid otherwise. Generating pairs sequentially from one
//! seeded stream makes the pair set for a smaller budget a prefix of the set for
//! a larger one, so the estimate is monotone in the budget.

use std::f64::consts::{PI, TAU};
use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::BoundaryFunction;
use crate::circle::chord_of_angle;
use crate::error::{Error, Result};
use crate::moduli::Modulus;

/// Smallest admissible pair budget.
pub const MIN_PAIR_BUDGET: usize = 1000;

/// Default pair budget for diagnostics.
pub const DEFAULT_PAIR_BUDGET: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OmegaNorm {
    pub sup_norm: f64,
    pub seminorm: f64,
    pub total: f64,
}

fn chord_for_offset(d: usize, n: usize) -> f64 {
    chord_of_angle(TAU * d as f64 / n as f64)
}

/// Max over `k` of `|f_k − f_{k+d}|`, for one index offset.
fn max_difference_at_offset(values: &[Complex64], d: usize) -> f64 {
    let n = values.len();
    let mut m: f64 = 0.0;
    for k in 0..n {
        let diff = (values[k] - values[(k + d) % n]).norm();
        if diff > m {
            m = diff;
        }
    }
    m
}

fn dyadic_offsets(n: usize) -> Vec<usize> {
    let mut v = Vec::new();
    let mut d = 1;
    while d <= n / 2 {
        v.push(d);
        d *= 2;
    }
    v
}

/// Offsets used by the profile scan: every offset up to 64, then dyadic and
/// sesqui-dyadic offsets up to `n/2`.
fn profile_offsets(n: usize) -> Vec<usize> {
    let half = n / 2;
    let mut v: Vec<usize> = (1..=half.min(64)).collect();
    let mut d = 64;
    while d <= half {
        for c in [d, d + d / 2] {
            if c <= half && !v.contains(&c) {
                v.push(c);
            }
        }
        d *= 2;
    }
    v
}

/// Pseudo-random pair of points in the closed disk with a spread of
/// separations from `1e-5` up to the diameter.
fn random_disk_pair(rng: &mut ChaCha8Rng) -> (Complex64, Complex64) {
    loop {
        let kind: f64 = rng.gen();
        let v: f64 = rng.gen();
        let r = if kind < 0.25 {
            1.0
        } else if kind < 0.5 {
            1.0 - 10f64.powf(-6.0 * v)
        } else {
            v.sqrt()
        };
        let z = Complex64::from_polar(r, rng.gen::<f64>() * TAU);
        let s = 10f64.powf(-5.0 + 5.31 * rng.gen::<f64>());
        let mut w = z + Complex64::from_polar(s, rng.gen::<f64>() * TAU);
        let wn = w.norm();
        if wn > 1.0 {
            w /= wn;
        }
        if (z - w).norm() > 0.0 {
            return (z, w);
        }
    }
}

fn random_grid_pair(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    let i = rng.gen_range(0..n);
    let j = (i + rng.gen_range(1..n)) % n;
    (i, j)
}

fn check_budget(pair_budget: usize) -> Result<()> {
    if pair_budget < MIN_PAIR_BUDGET {
        return Err(Error::InvalidArgument {
            arg: "pair_budget",
            reason: format!("{pair_budget} < {MIN_PAIR_BUDGET}"),
        });
    }
    Ok(())
}

/// Seminorm over structured boundary pairs only.
fn structured_boundary_seminorm(f: &BoundaryFunction, w: &Modulus) -> Result<f64> {
    let n = f.n();
    let mut best: f64 = 0.0;
    for d in dyadic_offsets(n) {
        let wd = w.eval_positive(chord_for_offset(d, n))?;
        best = best.max(max_difference_at_offset(f.values(), d) / wd);
    }
    Ok(best)
}

fn random_boundary_seminorm(
    f: &BoundaryFunction,
    w: &Modulus,
    rng: &mut ChaCha8Rng,
    budget: usize,
) -> Result<f64> {
    let n = f.n();
    let vals = f.values();
    let mut best: f64 = 0.0;
    for _ in 0..budget {
        let (i, j) = random_grid_pair(rng, n);
        let gap = i.abs_diff(j);
        let wd = w.eval_positive(chord_for_offset(gap.min(n - gap), n))?;
        best = best.max((vals[i] - vals[j]).norm() / wd);
    }
    Ok(best)
}

fn random_disk_seminorm(
    f: &BoundaryFunction,
    w: &Modulus,
    rng: &mut ChaCha8Rng,
    budget: usize,
) -> Result<f64> {
    let eval = f.evaluator().ok_or(Error::NoEvaluator("disk sampling"))?;
    let mut best: f64 = 0.0;
    for _ in 0..budget {
        let (z, u) = random_disk_pair(rng);
        let wd = w.eval_positive((z - u).norm())?;
        let q = (eval(z) - eval(u)).norm() / wd;
        if q.is_finite() {
            best = best.max(q);
        }
    }
    Ok(best)
}

/// Estimate of `‖f‖_ω`. Deterministic given `(n, pair_budget, seed)`.
pub fn omega_norm(f: &BoundaryFunction, w: &Modulus, pair_budget: usize, seed: u64) -> Result<OmegaNorm> {
    check_budget(pair_budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let structured = structured_boundary_seminorm(f, w)?;
    let random = if f.has_evaluator() {
        random_disk_seminorm(f, w, &mut rng, pair_budget)?
    } else {
        random_boundary_seminorm(f, w, &mut rng, pair_budget)?
    };
    let sup_norm = f.sup_norm();
    let seminorm = structured.max(random);
    Ok(OmegaNorm {
        sup_norm,
        seminorm,
        total: sup_norm + seminorm,
    })
}

/// Exhaustive seminorm over all pairs of boundary grid points.
pub fn brute_force_seminorm(f: &BoundaryFunction, w: &Modulus) -> Result<f64> {
    let n = f.n();
    let mut best: f64 = 0.0;
    for d in 1..=n / 2 {
        let wd = w.eval_positive(chord_for_offset(d, n))?;
        best = best.max(max_difference_at_offset(f.values(), d) / wd);
    }
    Ok(best)
}

/// `M(δ_j)`: estimated sup of `|f(z) − f(w)|/ω(|z − w|)` over pairs with
/// `0 < |z − w| ≤ δ_j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LipProfile {
    pub bands: Vec<f64>,
    pub values: Vec<f64>,
}

impl LipProfile {
    /// Little-o diagnosis: the profile decreases and its final value is below a
    /// tenth of the initial one.
    pub fn decays(&self) -> bool {
        let first = self.values[0];
        let last = *self.values.last().unwrap();
        self.values.windows(2).all(|w| w[1] <= w[0]) && last < 0.1 * first
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// CSV with columns `delta, M`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(out);
        wr.write_record(["delta", "M"])?;
        for (d, m) in self.bands.iter().zip(&self.values) {
            wr.write_record(&[format!("{d:.17e}"), format!("{m:.17e}")])?;
        }
        wr.flush()?;
        Ok(())
    }
}

/// Smallest band resolvable on an `n`-point grid.
pub fn min_band(n: usize) -> f64 {
    4.0 * PI / n as f64
}

/// `count` log-spaced bands from `hi` down to `lo`.
pub fn default_bands(n: usize, count: usize) -> Vec<f64> {
    let lo = min_band(n);
    let hi = 1.0f64;
    let step = (lo.ln() - hi.ln()) / (count - 1) as f64;
    let mut b: Vec<f64> = (0..count).map(|i| (hi.ln() + step * i as f64).exp()).collect();
    b[count - 1] = lo;
    b
}

pub fn lip_profile(f: &BoundaryFunction, w: &Modulus, bands: &[f64], seed: u64) -> Result<LipProfile> {
    lip_profile_with_budget(f, w, bands, seed, DEFAULT_PAIR_BUDGET)
}

pub fn lip_profile_with_budget(
    f: &BoundaryFunction,
    w: &Modulus,
    bands: &[f64],
    seed: u64,
    pair_budget: usize,
) -> Result<LipProfile> {
    let n = f.n();
    if bands.is_empty() || bands.windows(2).any(|b| b[1] >= b[0]) {
        return Err(Error::InvalidArgument {
            arg: "bands",
            reason: "must be nonempty and strictly decreasing".into(),
        });
    }
    let resolution = min_band(n);
    let smallest = *bands.last().unwrap();
    if smallest < resolution * (1.0 - 1e-12) {
        return Err(Error::UnresolvableScale {
            band: smallest,
            resolution,
        });
    }
    let mut values = vec![0.0f64; bands.len()];
    let mut record = |sep: f64, q: f64| {
        for (b, v) in bands.iter().zip(values.iter_mut()) {
            if sep <= *b * (1.0 + 1e-12) && q > *v {
                *v = q;
            }
        }
    };
    for d in profile_offsets(n) {
        let c = chord_for_offset(d, n);
        let q = max_difference_at_offset(f.values(), d) / w.eval_positive(c)?;
        record(c, q);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(eval) = f.evaluator() {
        let top = bands[0];
        for _ in 0..pair_budget {
            let (z, _) = random_disk_pair(&mut rng);
            // separation log-uniform in [resolution/4, top]
            let s = (resolution / 4.0) * (top / (resolution / 4.0)).powf(rng.gen::<f64>());
            let mut u = z + Complex64::from_polar(s, rng.gen::<f64>() * TAU);
            if u.norm() > 1.0 {
                u /= u.norm();
            }
            let sep = (z - u).norm();
            if sep > 0.0 {
                let q = (eval(z) - eval(u)).norm() / w.eval_positive(sep)?;
                if q.is_finite() {
                    record(sep, q);
                }
            }
        }
    }
    Ok(LipProfile {
        bands: bands.to_vec(),
        values,
    })
}

/// Boundary-versus-disk seminorm comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TamrazovRatio {
    pub boundary_seminorm: f64,
    pub disk_seminorm: f64,
    /// `disk / boundary`; 1 by convention when both vanish.
    pub ratio: f64,
    pub degenerate: bool,
}

/// Below this the boundary seminorm is treated as zero.
const SEMINORM_FLOOR: f64 = 1e-14;

/// Ratio of the seminorm over mixed interior/boundary pairs to the
/// boundary-only seminorm at the same pair budget.
pub fn tamrazov_ratio(f: &BoundaryFunction, w: &Modulus, seed: u64) -> Result<TamrazovRatio> {
    tamrazov_ratio_with_budget(f, w, DEFAULT_PAIR_BUDGET, seed)
}

pub fn tamrazov_ratio_with_budget(
    f: &BoundaryFunction,
    w: &Modulus,
    pair_budget: usize,
    seed: u64,
) -> Result<TamrazovRatio> {
    check_budget(pair_budget)?;
    if !f.has_evaluator() {
        return Err(Error::NoEvaluator("tamrazov_ratio"));
    }
    let structured = structured_boundary_seminorm(f, w)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let boundary = structured.max(random_boundary_seminorm(f, w, &mut rng, pair_budget)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let disk = boundary.max(random_disk_seminorm(f, w, &mut rng, pair_budget)?);
    if boundary < SEMINORM_FLOOR {
        if disk < SEMINORM_FLOOR {
            return Ok(TamrazovRatio {
                boundary_seminorm: boundary,
                disk_seminorm: disk,
                ratio: 1.0,
                degenerate: true,
            });
        }
        return Err(Error::InconsistentSamples { boundary, disk });
    }
    Ok(TamrazovRatio {
        boundary_seminorm: boundary,
        disk_seminorm: disk,
        ratio: disk / boundary,
        degenerate: false,
    })
}
