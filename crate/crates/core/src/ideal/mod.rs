//! Approximation constructions for closed ideals of `Λ_ω`: truncated outer
//! functions, mollifiers, Carleson integrals, standard-ideal membership and
//! convergence tables.

mod carleson;
mod convergence;
mod membership;
mod mollifier;
mod scenario;

pub use carleson::{carleson_integral, carleson_quadrature, CarlesonIntegral, POSITIVE_MEASURE};
pub use convergence::{convergence_table, convergence_table_with_budget, ConvergenceTable, DECAY_GATE};
pub use membership::{standard_membership, MembershipReport, DIVISIBILITY_FACTOR};
pub use mollifier::{phi_mollifier, psi_mollifier};
pub use scenario::{
    catalog, mollifier_family, AtomSpec, Family, Scenario, ScenarioReport, Variant, PROFILE_BOUND_FACTOR,
};

use crate::boundary::BoundaryFunction;
use crate::circle::ArcUnion;
use crate::error::Result;
use crate::factorization::{outer_part, OuterFunction};

/// `f_Γ`: the outer function with log-modulus `log|f|·𝟙_Γ`.
pub fn truncated_outer(f: &BoundaryFunction, gamma: &ArcUnion) -> Result<OuterFunction> {
    outer_part(f)?.weighted(&gamma.cell_weights(f.n()))
}

/// `f_{Γ^c}`.
pub fn truncated_outer_complement(f: &BoundaryFunction, gamma: &ArcUnion) -> Result<OuterFunction> {
    let w: Vec<f64> = gamma.cell_weights(f.n()).iter().map(|c| 1.0 - c).collect();
    outer_part(f)?.weighted(&w)
}
