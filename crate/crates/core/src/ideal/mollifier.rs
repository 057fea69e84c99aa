use num_complex::Complex64;

use crate::boundary::BoundaryFunction;
use crate::circle::CirclePoint;
use crate::error::{Error, Result};

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidArgument {
            arg: "delta",
            reason: format!("{delta} is not positive"),
        });
    }
    Ok(())
}

/// `(z·ā − 1)/(z·ā − 1 − δ)`, vanishing at `a` and bounded by 1 on the closed
/// disk.
fn factor(z: Complex64, a_conj: Complex64, delta: f64) -> Complex64 {
    let w = z * a_conj - 1.0;
    w / (w - delta)
}

/// `ψ_{δ,N}(z) = Π_n (z·ā_n − 1)/(z·ā_n − 1 − δ)`.
pub fn psi_mollifier(points: &[CirclePoint], delta: f64, n: usize) -> Result<BoundaryFunction> {
    check_delta(delta)?;
    let conj: Vec<Complex64> = points.iter().map(|p| p.to_complex().conj()).collect();
    BoundaryFunction::closed_form(format!("psi[delta={delta:e},points={}]", points.len()), n, move |z| {
        conj.iter().fold(Complex64::new(1.0, 0.0), |acc, &a| acc * factor(z, a, delta))
    })
}

/// `φ_{δ,ε}`, vanishing at `a·e^{iε}` and `b·e^{−iε}`. The shrunken points must
/// stay inside the arc `(a, b)` (strictly inside for `ε > 0`).
pub fn phi_mollifier(a: CirclePoint, b: CirclePoint, eps: f64, delta: f64, n: usize) -> Result<BoundaryFunction> {
    check_delta(delta)?;
    let len = a.ccw_to(b);
    let len = if len == 0.0 { std::f64::consts::TAU } else { len };
    if !(eps >= 0.0) || 2.0 * eps >= len {
        return Err(Error::InvalidArc(format!(
            "eps = {eps} does not leave a shrunken arc inside an arc of length {len}"
        )));
    }
    let za = a.rotate(eps).to_complex().conj();
    let zb = b.rotate(-eps).to_complex().conj();
    BoundaryFunction::closed_form(format!("phi[delta={delta:e},eps={eps:e}]"), n, move |z| {
        factor(z, za, delta) * factor(z, zb, delta)
    })
}
