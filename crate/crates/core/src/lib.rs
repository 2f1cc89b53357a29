//! Exact genus-one quantum K-theory of the point.

pub mod expr;
pub mod genus0;
pub mod genus1;
pub mod poly;
pub mod ratfun;
pub mod report;
pub mod scalars;
pub mod tseries;
pub mod verify;
