//! Sampled boundary functions, the `Λ_ω` norm and its profile diagnostics,
//! boundary zero sets.

mod function;
mod norm;
mod zeros;

pub use function::{builtin, BoundaryFunction, Evaluator};
pub use norm::{
    brute_force_seminorm, default_bands, lip_profile, lip_profile_with_budget, min_band,
    omega_norm, tamrazov_ratio, tamrazov_ratio_with_budget, LipProfile, OmegaNorm,
    TamrazovRatio, DEFAULT_PAIR_BUDGET, MIN_PAIR_BUDGET,
};
pub use zeros::zero_set_estimate;
