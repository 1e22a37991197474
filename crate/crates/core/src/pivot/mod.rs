//! Objectives, signed permutations and the path tracers every algorithm is
//! built from.

mod coherent;
mod objective;
mod sigma;
mod trace;

pub use coherent::{
    coherent_path, coherent_path_in, coherent_sweep, distinct_value_bound, greatest_improvement_in, greatest_improvement_path,
    lattice_shadow_objective, tight_basis, Variant, RULE_COHERENT, RULE_GREATEST, RULE_SWEEP,
};
pub use objective::{identity_weights, parse_objective, write_objective, Objective};
pub(crate) use sigma::x_sigma_unchecked;
pub use sigma::{build_x_sigma, lex_compare, sigma_flag, SigmaFlag, SignedPermutation};
pub use trace::{Domain, Leg, PathTrace, Step};
