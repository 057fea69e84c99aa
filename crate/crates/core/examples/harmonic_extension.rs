//! Poisson/Herglotz extension of `log|1 − e^{iθ}|` and its conjugate function.

use diskfactor::circle::{conjugate_samples, quadrature_guard, HarmonicExtension, RealGrid};
use num_complex::Complex64;

fn main() -> diskfactor::Result<()> {
    let n = 4096;
    // log|1 - e^{it}| has a log singularity at 0; start half a cell off it.
    let u = RealGrid::from_fn(n, |t| {
        let t = if t == 0.0 { std::f64::consts::PI / n as f64 } else { t };
        (2.0 * (t / 2.0).sin()).abs().ln()
    })?;
    let h = HarmonicExtension::new(&u);
    println!("mean of u = {:.3e} (log|1 - 0| = 0)", h.mean());
    for r in [0.5, 0.9, quadrature_guard(n)] {
        let z = Complex64::new(-r, 0.0);
        println!("P[u](-{r:.4}) = {:+.8}  exact {:+.8}", h.poisson(z)?, (1.0 + r).ln());
    }
    let v = conjugate_samples(&u);
    // the conjugate of log|1 - e^{it}| is the sawtooth (t - π)/2 on (0, 2π)
    let k = n / 4;
    println!("conjugate at θ = π/2: {:+.6} (sawtooth {:+.6})", v.values()[k], (u.theta(k) - std::f64::consts::PI) / 2.0);
    Ok(())
}
