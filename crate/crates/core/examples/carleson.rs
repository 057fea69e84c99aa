//! Carleson integrals of a few closed sets, with the graded-quadrature check.

use diskfactor::circle::{Arc, ArcUnion, CirclePoint, ClosedBoundarySet};
use diskfactor::ideal::{carleson_integral, carleson_quadrature};

fn main() -> diskfactor::Result<()> {
    let q = std::f64::consts::FRAC_PI_2;
    let sets = [
        ("{1}", ClosedBoundarySet::from_angles(&[0.0])?),
        ("{±1, ±i}", ClosedBoundarySet::from_angles(&[0.0, q, 2.0 * q, 3.0 * q])?),
        ("{2^-k}", ClosedBoundarySet::from_angles(&(0..20).map(|k| 0.5f64.powi(k)).chain([0.0]).collect::<Vec<_>>())?),
        (
            "lower half",
            ClosedBoundarySet::from_complement(ArcUnion::new(vec![Arc::new(CirclePoint::new(0.0), CirclePoint::new(2.0 * q))])?),
        ),
    ];
    for (name, e) in &sets {
        let exact = carleson_integral(e)?;
        let quad = carleson_quadrature(e, 4000)?;
        match (exact.value(), quad.value()) {
            (Some(v), Some(c)) => println!("{name:<10} {v:.8}  (quadrature {c:.8})"),
            _ => println!("{name:<10} divergent, |E| = {:.4}", e.measure()),
        }
    }
    Ok(())
}
