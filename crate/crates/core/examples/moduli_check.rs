//! Axioms and the two growth conditions for the Hölder and log-type moduli.

use diskfactor::moduli::{condition3_estimate, condition_grid, eta_estimate, validate_modulus, Modulus};

fn main() -> diskfactor::Result<()> {
    for w in [Modulus::holder(0.5), Modulus::log(1.0), Modulus::log(2.0)] {
        let axioms = validate_modulus(&w, &condition_grid(1.0))?;
        let eta = eta_estimate(&w, 2.0, &condition_grid(2f64.sqrt()))?;
        let c3 = condition3_estimate(&w, &condition_grid(2f64.sqrt()))?;
        println!(
            "{:<12} axioms on (0,1]: {:<5}  eta(rho=2) = {:.6} at t = {:.2e}  square condition ~ {:.4e}",
            w.name(),
            axioms.all_passed(),
            eta.eta,
            eta.argmin_t,
            c3.estimate.eta
        );
        for (floor, m) in c3.trend.iter().step_by(3) {
            println!("    floor {floor:.0e}: min ratio {m:.4e}");
        }
    }
    Ok(())
}
