//! Newton–Puiseux engine: rational expansions above x = 0, their classical
//! conjugates, precision bounds, branch factors and Bézout cofactors.

mod branch;
mod classical;
mod newton;
mod rpe;
pub mod series;

pub use branch::{
    bezout_cofactors, branch_factorization, branch_factorization_by, divrem_monic_trunc,
    norm_of_expansion, BranchFactorization, Cofactor,
};
pub use classical::{
    classical_expansions, expansions_with_bound, fy_valuation, precision_bound, series_eval_bipoly,
    singular_parts, ClassicalExpansion, ClassicalSet, SingularPart,
};
pub use newton::{newton_polygon, Edge};
pub use rpe::{rational_puiseux_expansions, Rpe, EXACT};

use crate::poly::UniPoly;

/// A truncated power series in the local parameter.
pub type Series = UniPoly<Vec<u64>>;
