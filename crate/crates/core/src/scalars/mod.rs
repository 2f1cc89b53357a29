//! Exact scalars: arbitrary-precision rationals and cyclotomic field elements.

mod cyclotomic;
mod field;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, root_of_unity, Cyc};
pub use field::{int, rat, ArithError, Field, Rational};
pub(crate) use field::{join_terms, signed_term};
