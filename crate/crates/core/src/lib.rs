//! Exact computations around pair partitions of finite fields: residue and
//! cyclotomic arithmetic, sparse polynomials, the Combinatorial
//! Nullstellensatz coefficient formula, the Dyson constant-term identity,
//! certified backtracking solvers, conjecture scans and sumset bounds.

pub mod algebra;
pub mod conjectures;
pub mod dyson;
pub mod error;
pub mod nullstellensatz;
pub mod poly;
pub mod rng;
pub mod solvers;
pub mod sumsets;

pub use error::{Error, Result};
