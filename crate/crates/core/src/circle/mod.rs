//! Geometry and harmonic analysis on the unit circle.

mod grid;
mod harmonic;
mod sets;

pub use grid::{
    check_grid_size, grid_angle, grid_unit, uniform_grid, ComplexGrid, GridFunction, RealGrid,
    Sample, DEFAULT_GRID,
};
pub use harmonic::{
    conjugate_samples, fourier_coefficients, herglotz_transform, poisson_transform,
    quadrature_guard, HarmonicExtension,
};
pub(crate) use harmonic::check_guard;
pub use sets::{
    chord_of_angle, gamma_exhaustion, unit, Arc, ArcUnion, CirclePoint, ClosedBoundarySet,
};

use crate::error::Result;

/// `d(ξ, E)`, the Euclidean chord distance from `ξ` to the closed set `E`.
pub fn chordal_distance(xi: CirclePoint, set: &ClosedBoundarySet) -> Result<f64> {
    set.chordal_distance(xi)
}
