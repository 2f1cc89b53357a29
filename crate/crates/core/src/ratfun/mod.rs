//! Rational functions in one named variable over a pluggable field, with
//! local expansions, residues, partial fractions, `[·]_+` and the Ω pairing.

mod calculus;
mod laurent;
mod lift;
#[allow(clippy::module_inception)]
mod ratfun;

pub use calculus::{
    cyclotomic_partial_fractions, grouped_partial_fractions, laurent_part, laurent_part_by_residues, local_expansion, omega_pair,
    partial_fractions, principal_part, product_residue, residue_at, residue_sum, residue_sum_over_part, split_roots_of_unity, CalcError,
    Center, LocalExpansion, PartialFractions, PfTerm, PoleSet,
};
pub use laurent::LaurentPoly;
pub use lift::{CyclotomicLift, RootsOfUnity};
pub use ratfun::{RatFun, Var};
