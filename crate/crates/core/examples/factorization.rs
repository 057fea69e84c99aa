//! Inner-outer factorization of a polynomial with zeros inside, on and outside
//! the circle, and division by its inner factor.

use diskfactor::boundary::BoundaryFunction;
use diskfactor::factorization::{divide_by_inner, inner_part, InnerFunction, SingularMeasure, ZeroList};
use diskfactor::moduli::Modulus;
use num_complex::Complex64;

fn main() -> diskfactor::Result<()> {
    let n = 4096;
    let a = Complex64::new(0.3, 0.4);
    // f(z) = (z - a)(1 - z)(z - 2)
    let f = BoundaryFunction::closed_form("poly", n, move |z| (z - a) * (1.0 - z) * (z - 2.0))?;
    let part = inner_part(&f, 0.01)?;
    println!("masked nodes: {:?}", part.flagged);
    println!("max ||U| - 1| = {:.3e}", part.max_deviation);
    println!("|O(0)| = {:.6}  (|a|·1·2 / |a| = 2)", part.outer.log_abs_at_origin().exp());

    let blaschke = InnerFunction::new(ZeroList::simple(&[a])?, SingularMeasure::default());
    let q = divide_by_inner(&f, &blaschke, &Modulus::holder(0.5))?;
    println!("filled nodes {}, probes {}, norm ratio {:.4}", q.filled.len(), q.probes, q.fpr_ratio);
    // B is unimodular on the circle, so the quotient keeps the modulus of f there
    let k = n / 8;
    println!("|f/B| at θ = π/4: {:.6}, |f| = {:.6}", q.quotient.values()[k].norm(), f.values()[k].norm());

    let s = InnerFunction::new(ZeroList::default(), SingularMeasure::atom(0.0, 1.0)?);
    match divide_by_inner(&f, &s, &Modulus::holder(0.5)) {
        Ok(_) => println!("unexpected: f divisible by a singular factor"),
        Err(e) => println!("dividing by the atom at 1: {e}"),
    }
    Ok(())
}
