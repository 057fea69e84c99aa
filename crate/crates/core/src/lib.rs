//! Numerical function theory on the unit disk: canonical inner–outer
//! factorization, weighted Lipschitz norms `‖f‖_ω`, boundary zero sets and the
//! approximation constructions used to study closed ideals of `Λ_ω`.
//!
//! Modules:
//!
//! - [`circle`]: grids, arcs, closed boundary sets, Poisson/Herglotz integrals
//!   and the conjugate function.
//! - [`moduli`]: moduli of continuity and the regularity conditions on them.
//! - [`boundary`]: sampled boundary functions, `‖f‖_ω`, Lipschitz profiles and
//!   the boundary-versus-disk comparison.
//! - [`factorization`]: Blaschke products, atomic singular inner functions,
//!   outer functions and division by inner factors.
//! - [`ideal`]: truncated outer functions, mollifiers, Carleson integrals and
//!   convergence tables.
//! - [`cli`]: the `diskfactor` command-line front end.

pub mod boundary;
pub mod circle;
pub mod cli;
mod error;
pub mod factorization;
pub mod ideal;
pub mod moduli;

pub use error::{Error, Result};
