//! `‖f‖_ω`, the small-scale Lipschitz profile and the disk/boundary ratio.

use diskfactor::boundary::{builtin, default_bands, lip_profile, omega_norm, tamrazov_ratio, DEFAULT_PAIR_BUDGET};
use diskfactor::moduli::Modulus;

fn main() -> diskfactor::Result<()> {
    let n = 4096;
    let w = Modulus::holder(0.5);
    for spec in ["oneminusz", "power:0.5", "poly:0,0,0,1"] {
        let f = builtin::parse(spec, n)?;
        let norm = omega_norm(&f, &w, DEFAULT_PAIR_BUDGET, 1)?;
        let profile = lip_profile(&f, &w, &default_bands(n, 6), 1)?;
        let ratio = tamrazov_ratio(&f, &w, 1)?;
        println!(
            "{spec:<14} sup {:.4}  seminorm {:.4}  profile decays: {}  disk/boundary {:.4}",
            norm.sup_norm,
            norm.seminorm,
            profile.decays(),
            ratio.ratio
        );
        for (d, m) in profile.bands.iter().zip(&profile.values) {
            println!("    delta {d:.3e}  M {m:.4e}");
        }
    }
    Ok(())
}
