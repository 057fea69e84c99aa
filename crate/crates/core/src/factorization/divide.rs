use num_complex::Complex64;
use serde::Serialize;

use super::outer::nearest_unmasked;
use super::InnerFunction;
use crate::boundary::{omega_norm, BoundaryFunction, OmegaNorm, DEFAULT_PAIR_BUDGET};
use crate::circle::{unit, ComplexGrid};
use crate::error::{Error, Result};
use crate::moduli::Modulus;

/// Knobs for [`divide_by_inner_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivisionOptions {
    pub pair_budget: usize,
    pub seed: u64,
    /// `|f/U|` may not exceed `bound_factor · sup|f|`.
    pub bound_factor: f64,
}

impl Default for DivisionOptions {
    fn default() -> Self {
        DivisionOptions {
            pair_budget: DEFAULT_PAIR_BUDGET,
            seed: 0,
            bound_factor: 1e3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Division {
    pub quotient: BoundaryFunction,
    /// `‖f/U‖_ω / ‖f‖_ω`, both over boundary pairs.
    pub fpr_ratio: f64,
    pub quotient_norm: OmegaNorm,
    pub f_norm: OmegaNorm,
    /// Grid nodes where `U` vanishes, filled from a neighbour.
    pub filled: Vec<usize>,
    /// Interior probe points where `|U| ≤ 0.1` was tested.
    pub probes: usize,
}

/// `|U|` above which a probe point is not informative.
const PROBE_LEVEL: f64 = 0.1;
/// `log|U|` below which `U` has underflowed and the probe is skipped.
const PROBE_FLOOR: f64 = -575.0;

fn probe_points(u: &InnerFunction) -> Vec<Complex64> {
    let mut pts = Vec::new();
    for &(a, _) in u.blaschke.zeros() {
        for eps in [1e-2, 1e-4, 1e-6] {
            for j in 0..8 {
                let z = a + Complex64::from_polar(eps, j as f64 * std::f64::consts::FRAC_PI_4);
                if z.norm() < 1.0 {
                    pts.push(z);
                }
            }
        }
    }
    for &(p, _) in u.singular.atoms() {
        for k in 1..=4 {
            pts.push(p.to_complex() * (1.0 - 10f64.powi(-k)));
        }
    }
    pts
}

/// Interior divisibility test: at points near the zeros and atoms of `U` where
/// `|U| ≤ 0.1`, `|f/U|` must stay below `limit`. Returns the number of points
/// tested.
pub fn divisibility_probe(f: &BoundaryFunction, u: &InnerFunction, limit: f64) -> Result<usize> {
    if u.is_trivial() {
        return Ok(0);
    }
    let eval = f.evaluator().ok_or(Error::NoEvaluator("divisibility probe"))?;
    let mut tested = 0;
    for z in probe_points(u) {
        let lu = u.log_abs(z);
        if lu > PROBE_LEVEL.ln() || lu < PROBE_FLOOR {
            continue;
        }
        tested += 1;
        let lq = eval(z).norm().ln() - lu;
        if lq > limit.ln() {
            return Err(Error::NotDivisible {
                value: lq.exp(),
                limit,
                location: format!("z = {z:.6}"),
            });
        }
    }
    Ok(tested)
}

/// `f/U` on the grid with the measured F-property ratio.
pub fn divide_by_inner(f: &BoundaryFunction, u: &InnerFunction, w: &Modulus) -> Result<Division> {
    divide_by_inner_with(f, u, w, &DivisionOptions::default())
}

pub fn divide_by_inner_with(
    f: &BoundaryFunction,
    u: &InnerFunction,
    w: &Modulus,
    opts: &DivisionOptions,
) -> Result<Division> {
    let n = f.n();
    let limit = opts.bound_factor * f.sup_norm();
    let probes = divisibility_probe(f, u, limit)?;
    let uv = u.boundary_values(n)?;
    let bad: Vec<bool> = uv.values().iter().map(|v| v.norm() < 1.0 - 1e-8).collect();
    if bad.iter().all(|&b| b) {
        return Err(Error::SingularEvaluation("inner function vanishes on the whole grid".into()));
    }
    let mut q: Vec<Complex64> = f
        .values()
        .iter()
        .zip(uv.values())
        .zip(&bad)
        .map(|((fv, uv), &b)| if b { Complex64::new(0.0, 0.0) } else { fv / uv })
        .collect();
    let filled: Vec<usize> = (0..n).filter(|&k| bad[k]).collect();
    for &k in &filled {
        q[k] = q[nearest_unmasked(&bad, k)];
    }
    if let Some((k, v)) = q
        .iter()
        .enumerate()
        .map(|(k, v)| (k, v.norm()))
        .find(|&(_, v)| v > limit)
    {
        return Err(Error::NotDivisible {
            value: v,
            limit,
            location: format!("boundary node {k} (e^{{i theta}} = {:.6})", unit(f.samples().theta(k))),
        });
    }
    let quotient = BoundaryFunction::from_samples(format!("({})/U", f.name()), ComplexGrid::new(q)?);
    let f_norm = omega_norm(&f.boundary_only(), w, opts.pair_budget, opts.seed)?;
    let quotient_norm = omega_norm(&quotient, w, opts.pair_budget, opts.seed)?;
    if f_norm.total == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(Division {
        fpr_ratio: quotient_norm.total / f_norm.total,
        quotient,
        quotient_norm,
        f_norm,
        filled,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::builtin;
    use crate::circle::grid_unit;
    use crate::factorization::{blaschke_eval, SingularMeasure, ZeroList};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn blaschke(points: &[Complex64]) -> InnerFunction {
        InnerFunction::new(ZeroList::simple(points).unwrap(), SingularMeasure::default())
    }

    #[test]
    fn pure_blaschke_cancels() {
        let u = blaschke(&[c(0.5, 0.0)]);
        let uu = u.clone();
        let f = BoundaryFunction::closed_form("B", 256, move |z| uu.eval(z)).unwrap();
        let d = divide_by_inner(&f, &u, &Modulus::holder(0.5)).unwrap();
        assert!(d.quotient.values().iter().all(|v| (v - c(1.0, 0.0)).norm() < 1e-13));
        assert!(d.quotient_norm.seminorm < 1e-12);
        assert!((d.fpr_ratio - 1.0 / d.f_norm.total).abs() < 1e-12);
        assert!(d.probes > 0);
    }

    #[test]
    fn z_times_one_minus_z() {
        let f = builtin::polynomial(512, vec![c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let d = divide_by_inner(&f, &blaschke(&[c(0.0, 0.0)]), &Modulus::log(1.0)).unwrap();
        for k in [0, 5, 300] {
            assert!((d.quotient.values()[k] - (1.0 - grid_unit(k, 512))).norm() < 1e-13);
        }
        assert!(d.fpr_ratio.is_finite());
    }

    #[test]
    fn non_divisible_is_detected() {
        let f = builtin::one_minus_z(256).unwrap();
        let err = divide_by_inner(&f, &blaschke(&[c(0.0, 0.0)]), &Modulus::holder(0.5)).unwrap_err();
        assert!(matches!(err, Error::NotDivisible { .. }));
        let s = InnerFunction::new(ZeroList::default(), SingularMeasure::atom(0.0, 1.0).unwrap());
        let err = divide_by_inner(&f, &s, &Modulus::holder(0.5)).unwrap_err();
        assert!(matches!(err, Error::NotDivisible { .. }));
    }

    #[test]
    fn singular_factor_divides() {
        let s = InnerFunction::new(ZeroList::default(), SingularMeasure::atom(0.0, 1.0).unwrap());
        let ss = s.clone();
        let zl = ZeroList::simple(&[c(0.2, 0.3)]).unwrap();
        let f = BoundaryFunction::closed_form("S(1-z)B", 1024, move |z| {
            ss.eval(z) * (1.0 - z) * blaschke_eval(&zl, z)
        })
        .unwrap();
        let d = divide_by_inner(&f, &s, &Modulus::holder(0.5)).unwrap();
        assert_eq!(d.filled, vec![0]);
        assert!(d.fpr_ratio.is_finite() && d.fpr_ratio > 0.0);
        assert!(d.probes >= 2);
    }

    #[test]
    fn trivial_inner_needs_no_evaluator() {
        let f = builtin::one_minus_z(64).unwrap().boundary_only();
        let d = divide_by_inner(&f, &InnerFunction::trivial(), &Modulus::holder(0.5)).unwrap();
        assert!((d.fpr_ratio - 1.0).abs() < 1e-15);
        assert!(divide_by_inner(&f, &blaschke(&[c(0.1, 0.0)]), &Modulus::holder(0.5)).is_err());
    }
}
