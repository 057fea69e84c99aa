//! Exhaustion scenarios for both families, their negative controls, and a
//! standard-ideal membership check.

use diskfactor::boundary::builtin;
use diskfactor::circle::ClosedBoundarySet;
use diskfactor::factorization::{InnerFunction, SingularMeasure, ZeroList};
use diskfactor::ideal::{catalog, standard_membership, Family, Variant};

fn main() -> diskfactor::Result<()> {
    for s in catalog() {
        for family in [Family::Product, Family::Power] {
            for variant in [Variant::Standard, Variant::SwappedComplement] {
                let r = s.run(family, variant)?;
                println!(
                    "{:<8} {family:?}/{variant:?}: gaps {:.3e} -> {:.3e}, bounded {}, passes {}",
                    s.name,
                    r.table.total_gaps[0],
                    r.table.total_gaps.last().unwrap(),
                    r.bounded,
                    r.passes()
                );
            }
        }
    }

    let n = 4096;
    let e = ClosedBoundarySet::from_angles(&[0.0])?;
    let u = InnerFunction::new(ZeroList::default(), SingularMeasure::atom(0.0, 1.0)?);
    let f = builtin::parse("oneminusz", n)?;
    let r = standard_membership(&f, &e, &InnerFunction::trivial(), 1e-6);
    println!("1 - z in I(E={{1}}, U=1): {}", r.member);
    let r = standard_membership(&f, &e, &u, 1e-6);
    println!("1 - z in I(E={{1}}, U=S): {} {:?}", r.member, r.failures);
    Ok(())
}
