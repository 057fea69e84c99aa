//! Moduli of continuity and the regularity conditions
//!
//! - the power condition `ω(t^ρ) ≥ η_ρ ω(t)^ρ` for `1 ≤ ρ ≤ 2`,
//! - the square condition `ω(t²) ≥ η ω(t)`.
//!
//! Built-in families are the Hölder moduli `φ_α(t) = t^α` and the logarithmic
//! moduli `χ_α(t) = 1/(|log t| + 1)^α`. Axiom validation is diagnostic: a
//! modulus with recorded violations can still be used everywhere.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Upper end of the domain `[0, 2]` of every modulus.
pub const DOMAIN_MAX: f64 = 2.0;

/// Relative slack used when comparing neighbouring grid values.
const MONOTONE_RTOL: f64 = 1e-12;

#[derive(Clone)]
enum Kind {
    Holder(f64),
    Log(f64),
    Tabulated { t: Vec<f64>, w: Vec<f64> },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

/// A modulus of continuity `ω` on `[0, 2]`.
#[derive(Clone)]
pub struct Modulus {
    kind: Kind,
    name: String,
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Modulus").field("name", &self.name).finish()
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl Modulus {
    /// `φ_α(t) = t^α`.
    pub fn holder(alpha: f64) -> Self {
        Modulus {
            kind: Kind::Holder(alpha),
            name: format!("holder:{alpha}"),
        }
    }

    /// `χ_α(t) = 1/(|log t| + 1)^α`, with `χ_α(0) = 0`.
    pub fn log(alpha: f64) -> Self {
        Modulus {
            kind: Kind::Log(alpha),
            name: format!("log:{alpha}"),
        }
    }

    pub fn custom(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Modulus {
            kind: Kind::Custom(Arc::new(f)),
            name: name.into(),
        }
    }

    /// Piecewise-linear interpolation of `(t, ω)` pairs. A leading `(0, 0)` is
    /// added when the table does not start at the origin; values beyond the last
    /// abscissa are held constant.
    pub fn tabulated(name: impl Into<String>, mut points: Vec<(f64, f64)>) -> Result<Self> {
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        if points.is_empty() {
            return Err(Error::Parse("empty modulus table".into()));
        }
        if points[0].0 > 0.0 {
            points.insert(0, (0.0, 0.0));
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Parse("modulus table abscissae must be distinct".into()));
        }
        let (t, w) = points.into_iter().unzip();
        Ok(Modulus {
            kind: Kind::Tabulated { t, w },
            name: name.into(),
        })
    }

    /// Reads a two-column CSV `t, omega` (with header).
    pub fn from_csv(path: &Path) -> Result<Self> {
        let mut rd = csv::Reader::from_path(path)?;
        let mut pts = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let p = |i: usize| -> Result<f64> {
                rec.get(i)
                    .ok_or_else(|| Error::Parse(format!("row has no column {i}")))?
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("{e}")))
            };
            pts.push((p(0)?, p(1)?));
        }
        Self::tabulated(format!("csv:{}", path.display()), pts)
    }

    /// Parses `holder:<α>`, `log:<α>` or `csv:<path>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (family, arg) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("modulus `{spec}`: expected family:parameter")))?;
        let alpha = || -> Result<f64> {
            let a: f64 = arg
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("modulus `{spec}`: bad parameter")))?;
            if !(a > 0.0) || !a.is_finite() {
                return Err(Error::Parse(format!("modulus `{spec}`: parameter must be positive")));
            }
            Ok(a)
        };
        match family {
            "holder" => Ok(Self::holder(alpha()?)),
            "log" => Ok(Self::log(alpha()?)),
            "csv" => Self::from_csv(Path::new(arg)),
            _ => Err(Error::Parse(format!("unknown modulus family `{family}`"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `ω(t)`.
    pub fn eval(&self, t: f64) -> f64 {
        match &self.kind {
            Kind::Holder(a) => t.powf(*a),
            Kind::Log(a) => {
                if t <= 0.0 {
                    0.0
                } else {
                    (t.ln().abs() + 1.0).powf(-a)
                }
            }
            Kind::Tabulated { t: ts, w } => interpolate(ts, w, t),
            Kind::Custom(f) => f(t),
        }
    }

    /// `ω(t)` with a data error for negative or non-finite values.
    pub fn eval_checked(&self, t: f64) -> Result<f64> {
        let v = self.eval(t);
        if v.is_finite() && v >= 0.0 {
            Ok(v)
        } else {
            Err(Error::ModulusData { t, value: v })
        }
    }

    /// `ω(t)`, failing for a zero value at `t > 0`.
    pub(crate) fn eval_positive(&self, t: f64) -> Result<f64> {
        let v = self.eval_checked(t)?;
        if v == 0.0 && t > 0.0 {
            return Err(Error::DegenerateModulus { t });
        }
        Ok(v)
    }
}

fn interpolate(ts: &[f64], ws: &[f64], t: f64) -> f64 {
    if t <= ts[0] {
        return ws[0];
    }
    let last = ts.len() - 1;
    if t >= ts[last] {
        return ws[last];
    }
    let i = ts.partition_point(|&x| x <= t) - 1;
    let s = (t - ts[i]) / (ts[i + 1] - ts[i]);
    ws[i] + s * (ws[i + 1] - ws[i])
}

/// `count` logarithmically spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && count >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    let step = (b - a) / (count - 1) as f64;
    let mut g: Vec<f64> = (0..count).map(|i| (a + step * i as f64).exp()).collect();
    g[0] = lo;
    g[count - 1] = hi;
    g
}

/// Default grid for condition checks: 2000 log-spaced points from `1e-12` to
/// `cap`, with `t = 1` inserted when it lies inside the range.
pub fn condition_grid(cap: f64) -> Vec<f64> {
    condition_grid_with_floor(1e-12, cap)
}

pub fn condition_grid_with_floor(floor: f64, cap: f64) -> Vec<f64> {
    let mut g = log_grid(floor, cap, 2000);
    if floor < 1.0 && cap > 1.0 && !g.contains(&1.0) {
        let at = g.partition_point(|&x| x < 1.0);
        g.insert(at, 1.0);
    }
    g
}

/// Outcome of one axiom check.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    /// Worst violating pair `(t_1, t_2)`, if any.
    pub worst_pair: Option<(f64, f64)>,
    /// Size of the worst violation (0 when passed).
    pub magnitude: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub modulus: String,
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

pub const AXIOM_ZERO: &str = "omega(0) = 0";
pub const AXIOM_NONDECREASING: &str = "omega nondecreasing";
pub const AXIOM_RATIO_NONINCREASING: &str = "omega(t)/t nonincreasing";
pub const AXIOM_RATIO_UNBOUNDED: &str = "omega(t)/t -> infinity";

/// Checks the modulus axioms on a strictly increasing grid inside `(0, 2]`.
pub fn validate_modulus(w: &Modulus, grid: &[f64]) -> Result<ValidationReport> {
    if grid.len() < 2 {
        return Err(Error::InvalidArgument {
            arg: "grid",
            reason: "need at least two points".into(),
        });
    }
    if grid[0] <= 0.0 || grid[grid.len() - 1] > DOMAIN_MAX || grid.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::InvalidArgument {
            arg: "grid",
            reason: "must be strictly increasing within (0, 2]".into(),
        });
    }
    let vals = grid
        .iter()
        .map(|&t| w.eval_checked(t))
        .collect::<Result<Vec<f64>>>()?;
    let at_zero = w.eval_checked(0.0)?;
    let ratios: Vec<f64> = grid.iter().zip(&vals).map(|(t, v)| v / t).collect();

    let mut checks = vec![AxiomCheck {
        axiom: AXIOM_ZERO,
        passed: at_zero == 0.0,
        worst_pair: (at_zero != 0.0).then_some((0.0, 0.0)),
        magnitude: at_zero,
    }];

    // ω(t_i) ≤ ω(t_{i+1})
    checks.push(worst_violation(AXIOM_NONDECREASING, grid, |i| {
        vals[i] - vals[i + 1] - MONOTONE_RTOL * vals[i].abs()
    }));
    // ω(t_{i+1})/t_{i+1} ≤ ω(t_i)/t_i
    checks.push(worst_violation(AXIOM_RATIO_NONINCREASING, grid, |i| {
        ratios[i + 1] - ratios[i] - MONOTONE_RTOL * ratios[i].abs()
    }));

    // ω(t)/t → ∞: the ratio at the floor exceeds the ratio at the top, and it
    // increases strictly as t decreases through the lowest decade of the grid.
    let last = grid.len() - 1;
    let decade_end = grid.partition_point(|&t| t <= 10.0 * grid[0]).max(2).min(grid.len());
    let mut worst: Option<(f64, f64, f64)> = None;
    for i in 0..decade_end - 1 {
        let excess = ratios[i + 1] - ratios[i];
        if excess >= 0.0 && worst.map_or(true, |w| excess > w.2) {
            worst = Some((grid[i], grid[i + 1], excess));
        }
    }
    let exceeds = ratios[0] > ratios[last] * (1.0 + 1e-9);
    checks.push(AxiomCheck {
        axiom: AXIOM_RATIO_UNBOUNDED,
        passed: exceeds && worst.is_none(),
        worst_pair: if exceeds {
            worst.map(|w| (w.0, w.1))
        } else {
            Some((grid[0], grid[last]))
        },
        magnitude: if exceeds {
            worst.map_or(0.0, |w| w.2)
        } else {
            ratios[last] - ratios[0]
        },
    });

    Ok(ValidationReport {
        modulus: w.name().to_string(),
        checks,
    })
}

fn worst_violation(axiom: &'static str, grid: &[f64], excess: impl Fn(usize) -> f64) -> AxiomCheck {
    let mut worst: Option<(usize, f64)> = None;
    for i in 0..grid.len() - 1 {
        let e = excess(i);
        if e > 0.0 && worst.map_or(true, |w| e > w.1) {
            worst = Some((i, e));
        }
    }
    AxiomCheck {
        axiom,
        passed: worst.is_none(),
        worst_pair: worst.map(|(i, _)| (grid[i], grid[i + 1])),
        magnitude: worst.map_or(0.0, |w| w.1),
    }
}

/// Grid minimum of a pointwise ratio and where it is attained.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RatioEstimate {
    pub eta: f64,
    pub argmin_t: f64,
}

fn min_ratio(grid: &[f64], ratio: impl Fn(f64) -> Result<f64>) -> Result<RatioEstimate> {
    let mut best = RatioEstimate {
        eta: f64::INFINITY,
        argmin_t: f64::NAN,
    };
    for &t in grid {
        let r = ratio(t)?;
        if r < best.eta {
            best = RatioEstimate { eta: r, argmin_t: t };
        }
    }
    Ok(best)
}

/// Estimate of `η_ρ` in `ω(t^ρ) ≥ η_ρ ω(t)^ρ`: the grid minimum of
/// `ω(t^ρ)/ω(t)^ρ`.
pub fn eta_estimate(w: &Modulus, rho: f64, grid: &[f64]) -> Result<RatioEstimate> {
    if !(1.0..=2.0).contains(&rho) {
        return Err(Error::InvalidArgument {
            arg: "rho",
            reason: format!("{rho} not in [1, 2]"),
        });
    }
    check_condition_grid(grid, |t| t.powf(rho))?;
    min_ratio(grid, |t| {
        let wt = w.eval_positive(t)?;
        let wr = w.eval_checked(t.powf(rho))?;
        Ok(wr / wt.powf(rho))
    })
}

fn check_condition_grid(grid: &[f64], image: impl Fn(f64) -> f64) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument {
            arg: "grid",
            reason: "empty".into(),
        });
    }
    for &t in grid {
        if !(t > 0.0) || image(t) > DOMAIN_MAX * (1.0 + 1e-12) {
            return Err(Error::InvalidArgument {
                arg: "grid",
                reason: format!("t = {t} leaves the domain of omega"),
            });
        }
    }
    Ok(())
}

/// Square-condition estimate with its trend over decreasing grid floors.
#[derive(Debug, Clone, Serialize)]
pub struct Condition3Report {
    pub estimate: RatioEstimate,
    /// `(floor, grid minimum over t ≥ floor)` for decreasing floors.
    pub trend: Vec<(f64, f64)>,
}

impl Condition3Report {
    /// The estimate stays bounded away from zero as the floor decreases.
    pub fn bounded_below(&self, threshold: f64) -> bool {
        self.trend.iter().all(|&(_, e)| e >= threshold)
    }
}

/// Estimate of `η` in `ω(t²) ≥ η ω(t)`: the grid minimum of `ω(t²)/ω(t)`.
pub fn condition3_estimate(w: &Modulus, grid: &[f64]) -> Result<Condition3Report> {
    check_condition_grid(grid, |t| t * t)?;
    let ratio = |t: f64| -> Result<f64> { Ok(w.eval_checked(t * t)? / w.eval_positive(t)?) };
    let estimate = min_ratio(grid, ratio)?;
    let lo = grid.iter().copied().fold(f64::INFINITY, f64::min);
    let mut trend = Vec::new();
    let mut floor = 1e-1;
    while floor >= lo * (1.0 - 1e-12) {
        let sub: Vec<f64> = grid.iter().copied().filter(|&t| t >= floor).collect();
        if !sub.is_empty() {
            trend.push((floor, min_ratio(&sub, ratio)?.eta));
        }
        floor /= 1e3;
    }
    Ok(Condition3Report { estimate, trend })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holder_half_passes_all_axioms() {
        let r = validate_modulus(&Modulus::holder(0.5), &log_grid(1e-12, 2.0, 10_000)).unwrap();
        assert!(r.all_passed(), "{r:?}");
    }

    #[test]
    fn identity_fails_unboundedness() {
        let r = validate_modulus(&Modulus::holder(1.0), &log_grid(1e-12, 2.0, 1000)).unwrap();
        assert!(!r.check(AXIOM_RATIO_UNBOUNDED).unwrap().passed);
        assert!(r.check(AXIOM_RATIO_NONINCREASING).unwrap().passed);
        assert!(r.check(AXIOM_NONDECREASING).unwrap().passed);
    }

    #[test]
    fn chi_two_ratio_violation_near_point_nine() {
        // d/dt(χ_2(t)/t) changes sign where 1 − ln t = 2, i.e. t = 1/e; the
        // ratio increases with t on (1/e, 1).
        let r = validate_modulus(&Modulus::log(2.0), &log_grid(1e-6, 0.99, 4000)).unwrap();
        let c = r.check(AXIOM_RATIO_NONINCREASING).unwrap();
        assert!(!c.passed);
        let (a, b) = c.worst_pair.unwrap();
        assert!(a > 1.0 / std::f64::consts::E && b < 1.0);
        // and the violation covers t ≈ 0.9
        let g = log_grid(0.89, 0.91, 50);
        assert!(!validate_modulus(&Modulus::log(2.0), &g)
            .unwrap()
            .check(AXIOM_RATIO_NONINCREASING)
            .unwrap()
            .passed);
    }

    #[test]
    fn chi_decreases_beyond_one() {
        let r = validate_modulus(&Modulus::log(1.0), &log_grid(1e-12, 2.0, 500)).unwrap();
        let c = r.check(AXIOM_NONDECREASING).unwrap();
        assert!(!c.passed);
        assert!(c.worst_pair.unwrap().0 >= 1.0);
    }

    #[test]
    fn negative_values_are_data_errors() {
        let w = Modulus::custom("bad", |t| t - 0.5);
        assert!(matches!(
            validate_modulus(&w, &[0.1, 0.2]),
            Err(Error::ModulusData { .. })
        ));
        let w = Modulus::custom("nan", |_| f64::NAN);
        assert!(validate_modulus(&w, &[0.1, 0.2]).is_err());
    }

    #[test]
    fn eta_for_holder_is_one() {
        for alpha in [0.25, 0.5, 0.75] {
            for rho in [1.0, 1.5, 2.0] {
                let g = condition_grid(2f64.powf(1.0 / rho));
                let e = eta_estimate(&Modulus::holder(alpha), rho, &g).unwrap();
                assert!((e.eta - 1.0).abs() < 1e-12, "{alpha} {rho} {e:?}");
            }
        }
    }

    #[test]
    fn eta_chi_one_rho_two_at_t_one() {
        let e = eta_estimate(&Modulus::log(1.0), 2.0, &condition_grid(2f64.sqrt())).unwrap();
        assert!((e.eta - 1.0).abs() < 1e-9);
        assert_eq!(e.argmin_t, 1.0);
    }

    #[test]
    fn eta_rejects_bad_input() {
        assert!(eta_estimate(&Modulus::holder(0.5), 2.5, &[0.5]).is_err());
        assert!(eta_estimate(&Modulus::holder(0.5), 2.0, &[1.5]).is_err());
        let degenerate = Modulus::custom("zero", |_| 0.0);
        assert!(matches!(
            eta_estimate(&degenerate, 2.0, &[0.5]),
            Err(Error::DegenerateModulus { .. })
        ));
    }

    #[test]
    fn condition3_holder_fails_chi_holds() {
        let g = condition_grid(2f64.sqrt());
        let h = condition3_estimate(&Modulus::holder(0.5), &g).unwrap();
        assert!(h.estimate.eta < 1e-3);
        // the trend decreases toward zero
        assert!(h.trend.windows(2).all(|w| w[1].1 < w[0].1));
        let c = condition3_estimate(&Modulus::log(1.0), &g).unwrap();
        // closed form (s+1)/(2s+1) at s = 12 ln 10
        let s = 12.0 * 10f64.ln();
        assert!((c.estimate.eta - (s + 1.0) / (2.0 * s + 1.0)).abs() < 1e-12);
        assert!((c.estimate.eta - 0.509).abs() < 1e-3);
        assert!(c.bounded_below(0.5));
    }

    #[test]
    fn parse_specs() {
        assert_eq!(Modulus::parse("holder:0.5").unwrap().eval(0.25), 0.5);
        assert!((Modulus::parse("log:1").unwrap().eval(1.0) - 1.0).abs() < 1e-15);
        assert!(Modulus::parse("holder:-1").is_err());
        assert!(Modulus::parse("cubic:1").is_err());
        assert!(Modulus::parse("holder").is_err());
    }

    #[test]
    fn tabulated_interpolates() {
        let w = Modulus::tabulated("t", vec![(1.0, 1.0), (2.0, 1.5)]).unwrap();
        assert_eq!(w.eval(0.5), 0.5);
        assert_eq!(w.eval(1.5), 1.25);
        assert_eq!(w.eval(3.0), 1.5);
        assert_eq!(w.eval(0.0), 0.0);
    }
}
