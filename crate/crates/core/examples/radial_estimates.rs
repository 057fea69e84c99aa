//! Radial decay of inner functions along randomized rays, and the outer-factor
//! profile against `A|f|`.

use diskfactor::boundary::builtin;
use diskfactor::factorization::{fpr1_profile, fpr2_sweep};
use diskfactor::moduli::Modulus;

fn main() -> diskfactor::Result<()> {
    let sweep = fpr2_sweep(200, 7)?;
    let held = sweep.iter().filter(|t| t.check.holds() == Some(true)).count();
    println!("inner decay bound: {held}/{} hold", sweep.len());

    let f = builtin::parse("oneminusz", 4096)?;
    let table = fpr1_profile(&f, &Modulus::holder(0.5), &[0.9, 0.99, 0.999])?;
    for (rho, m) in table.radii.iter().zip(table.row_maxima()) {
        println!("rho {rho}: max (|O| - A|f|)_+ / omega(1 - rho) = {m:.4e}");
    }
    println!("decreasing: {}", table.decreasing());
    Ok(())
}
