//! Canonical factorization `f = c_f U_f O_f`: Blaschke products, atomic
//! singular inner functions, outer functions from boundary modulus, division by
//! inner factors, and the radial estimates for inner and outer parts.

mod divide;
mod fpr1;
mod inner;
mod outer;

pub use divide::{divide_by_inner, divide_by_inner_with, divisibility_probe, Division, DivisionOptions};
pub use fpr1::{fpr1_profile, fpr1_profile_with, outer_modulus, Fpr1Table, DEFAULT_DIRECTIONS, DEFAULT_FPR1_A};
pub use inner::{
    blaschke_eval, counting_function, fpr2_check, fpr2_sweep, restrict_singular, singular_inner_eval,
    Fpr2Check, Fpr2Trial, InnerFunction, Region, SingularMeasure, ZeroList,
};
pub use outer::{
    inner_part, log_modulus_of, outer_from_log_modulus, outer_part, unimodular_deviation, InnerPart,
    LogSingularity, OuterFunction, CLIP_FLOOR,
};
