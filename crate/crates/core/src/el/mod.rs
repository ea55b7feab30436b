//! Empirical-likelihood machinery: the inner multiplier solve on one block
//! of moment vectors, and the profile of the split ratio over the common
//! coefficient.

pub mod inner;
pub mod profile;

pub use inner::{
    feasible_box, solve_multiplier, ELSolution, FeasibleRegion, GELRho, MomentBlock,
};
pub use profile::{beta_candidates, el_ratio_at, profile_split, SplitProfile};
