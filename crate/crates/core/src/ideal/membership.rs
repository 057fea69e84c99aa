use serde::Serialize;

use crate::boundary::BoundaryFunction;
use crate::circle::{grid_angle, CirclePoint, ClosedBoundarySet};
use crate::factorization::{divisibility_probe, InnerFunction};

/// Bound on `|f/U|` at the probe points, relative to `sup|f|`.
pub const DIVISIBILITY_FACTOR: f64 = 1e3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    pub member: bool,
    pub vanishes_on_e: bool,
    /// Grid nodes within `tol` of `E`.
    pub nodes_checked: usize,
    /// `max |f|` over those nodes.
    pub max_on_e: f64,
    pub divisible: bool,
    pub probes: usize,
    /// Clauses that failed, in words.
    pub failures: Vec<String>,
}

/// `f|_E ≡ 0` (to `tol·‖f‖_∞` on grid nodes within chordal distance `tol` of
/// `E`) and `f/U` bounded at interior probe points.
///
/// A nonempty `E` with no grid node within `tol` cannot be checked and fails
/// the vanishing clause.
pub fn standard_membership(
    f: &BoundaryFunction,
    e: &ClosedBoundarySet,
    u: &InnerFunction,
    tol: f64,
) -> MembershipReport {
    let n = f.n();
    let sup = f.sup_norm();
    let mut failures = Vec::new();
    let mut nodes_checked = 0;
    let mut max_on_e: f64 = 0.0;
    if !e.is_empty() {
        for k in 0..n {
            let d = e
                .chordal_distance(CirclePoint::new(grid_angle(k, n)))
                .expect("nonempty set");
            if d <= tol {
                nodes_checked += 1;
                max_on_e = max_on_e.max(f.values()[k].norm());
            }
        }
    }
    let vanishes_on_e = if e.is_empty() {
        true
    } else if nodes_checked == 0 {
        failures.push(format!("no grid node within {tol} of E"));
        false
    } else if max_on_e > tol * sup {
        failures.push(format!("|f| = {max_on_e:e} on E exceeds {:e}", tol * sup));
        false
    } else {
        true
    };
    let (divisible, probes) = match divisibility_probe(f, u, DIVISIBILITY_FACTOR * sup) {
        Ok(p) => (true, p),
        Err(err) => {
            failures.push(err.to_string());
            (false, 0)
        }
    };
    MembershipReport {
        member: vanishes_on_e && divisible,
        vanishes_on_e,
        nodes_checked,
        max_on_e,
        divisible,
        probes,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::builtin;
    use crate::factorization::{blaschke_eval, SingularMeasure, ZeroList};
    use num_complex::Complex64;

    #[test]
    fn examples() {
        let e = ClosedBoundarySet::from_angles(&[0.0]).unwrap();
        let f = builtin::one_minus_z(1024).unwrap();
        let r = standard_membership(&f, &e, &InnerFunction::trivial(), 1e-6);
        assert!(r.member, "{r:?}");
        let one = builtin::constant(1024, Complex64::new(1.0, 0.0)).unwrap();
        let r = standard_membership(&one, &e, &InnerFunction::trivial(), 1e-6);
        assert!(!r.member && !r.vanishes_on_e && r.divisible);

        let zl = ZeroList::simple(&[Complex64::new(0.5, 0.0)]).unwrap();
        let u = InnerFunction::new(zl.clone(), SingularMeasure::default());
        let g = BoundaryFunction::closed_form("B(1-z)", 1024, move |z| blaschke_eval(&zl, z) * (1.0 - z)).unwrap();
        let r = standard_membership(&g, &e, &u, 1e-6);
        assert!(r.member && r.probes > 0, "{r:?}");
        let r = standard_membership(&f, &e, &u, 1e-6);
        assert!(!r.member && !r.divisible);
    }

    #[test]
    fn unresolved_set_fails() {
        let e = ClosedBoundarySet::from_angles(&[1e-3]).unwrap();
        let f = builtin::one_minus_z(64).unwrap();
        let r = standard_membership(&f, &e, &InnerFunction::trivial(), 1e-6);
        assert!(!r.vanishes_on_e && r.nodes_checked == 0);
    }
}
