//! Exact arithmetic substrates: residue rings, `F_p` vector spaces,
//! cyclotomic integers and exact factorial arithmetic.

mod combinatorics;
mod cyclotomic;
mod modring;
mod vector;

pub use combinatorics::{
    binomial, double_factorial, factorial, factorial_quotient_mod, multinomial,
};
pub use cyclotomic::{cyclotomic_poly, CycloInt, UniPoly};
pub use modring::{gcd, is_prime, mod_inverse, units, ModRing};
pub use vector::{is_basis, Basis, VectorElem};
