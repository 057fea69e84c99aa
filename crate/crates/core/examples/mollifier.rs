//! `ψ_δ·f → f` in the ω-norm as `δ → 0`, and the `f ≡ 1` control that does not
//! converge.

use diskfactor::boundary::builtin;
use diskfactor::circle::CirclePoint;
use diskfactor::ideal::{convergence_table, mollifier_family};
use diskfactor::moduli::Modulus;

fn main() -> diskfactor::Result<()> {
    let n = 4096;
    let w = Modulus::holder(0.5);
    let deltas = [1e-1, 1e-2, 1e-3, 1e-4];
    for spec in ["oneminusz", "const:1"] {
        let f = builtin::parse(spec, n)?;
        let family = mollifier_family(&f, &[CirclePoint::new(0.0)], &deltas)?;
        let table = convergence_table(&family, &f, &w, 1)?;
        println!("{spec}: gate {}", table.passes_gate());
        for (d, g) in table.params.iter().zip(&table.total_gaps) {
            println!("    delta {d:.0e}  gap {g:.4e}");
        }
    }
    Ok(())
}
