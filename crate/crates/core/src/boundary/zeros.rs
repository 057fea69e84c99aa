use crate::circle::{grid_angle, Arc, ArcUnion, CirclePoint, ClosedBoundarySet};
use crate::error::{Error, Result};

use super::BoundaryFunction;

/// Grid estimate of the boundary zero set `{|f| ≤ tol}`.
///
/// Each cyclic run of sub-tolerance grid points becomes a closed grid interval
/// of `E`; the complementary arcs are the maximal gaps between runs.
pub fn zero_set_estimate(f: &BoundaryFunction, tol: f64) -> Result<ClosedBoundarySet> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument {
            arg: "tol",
            reason: format!("{tol} is not positive"),
        });
    }
    let n = f.n();
    let small: Vec<bool> = f.values().iter().map(|v| v.norm() <= tol).collect();
    let count = small.iter().filter(|&&s| s).count();
    if count == 0 {
        return Ok(ClosedBoundarySet::empty());
    }
    if count == n {
        log::warn!("all {n} samples of `{}` are below {tol}; taking E = T", f.name());
        return Ok(ClosedBoundarySet::full());
    }
    // Rotate so that scanning starts just after a gap point.
    let start = (0..n).find(|&k| !small[k]).unwrap();
    let mut arcs = Vec::new();
    let mut last_small: Option<usize> = None;
    let mut first_small: Option<usize> = None;
    for step in 1..=n {
        let k = (start + step) % n;
        if small[k] {
            if let Some(prev) = last_small {
                let gap = (k + n - prev) % n;
                if gap > 1 {
                    arcs.push(arc_between(prev, gap, n)?);
                }
            } else {
                first_small = Some(k);
            }
            last_small = Some(k);
        }
    }
    let (first, last) = (first_small.unwrap(), last_small.unwrap());
    let gap = (first + n - last) % n;
    // a single grid point leaves a gap of n, the punctured circle
    let gap = if gap == 0 { n } else { gap };
    if gap > 1 {
        arcs.push(arc_between(last, gap, n)?);
    }
    Ok(ClosedBoundarySet::from_complement(ArcUnion::new(arcs)?))
}

fn arc_between(from: usize, steps: usize, n: usize) -> Result<Arc> {
    Arc::from_start_length(CirclePoint::new(grid_angle(from, n)), grid_angle(steps, n))
}

#[cfg(test)]
mod tests {
    use super::super::builtin;
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn single_zero_of_one_minus_z() {
        let f = builtin::one_minus_z(4096).unwrap();
        let e = zero_set_estimate(&f, 1e-6).unwrap();
        assert_eq!(e.complementary_arcs().len(), 1);
        assert!(e.contains(CirclePoint::new(0.0)));
        assert!(e.measure() < 1e-12);
    }

    #[test]
    fn nonvanishing_gives_empty() {
        let f = builtin::constant(64, Complex64::new(1.0, 0.0)).unwrap();
        assert!(zero_set_estimate(&f, 1e-6).unwrap().is_empty());
    }

    #[test]
    fn two_zeros() {
        let f = builtin::parse("poly:1,0,-1", 1024).unwrap();
        let e = zero_set_estimate(&f, 1e-6).unwrap();
        assert_eq!(e.complementary_arcs().len(), 2);
        assert!(e.contains(CirclePoint::new(0.0)) && e.contains(CirclePoint::new(PI)));
        assert!(!e.contains(CirclePoint::new(PI / 2.0)));
    }

    #[test]
    fn all_small_is_full() {
        let f = builtin::constant(16, Complex64::new(0.0, 0.0)).unwrap();
        assert!(zero_set_estimate(&f, 1e-6).unwrap().is_full());
        assert!(zero_set_estimate(&f, 0.0).is_err());
    }

    #[test]
    fn wide_cluster() {
        let f = builtin::power(256, 1.0).unwrap();
        let e = zero_set_estimate(&f, 0.1).unwrap();
        let arcs = e.complementary_arcs();
        assert_eq!(arcs.len(), 1);
        assert!(e.measure() > 0.0);
        assert!(e.contains(CirclePoint::new(-0.02)) && e.contains(CirclePoint::new(0.02)));
    }
}
