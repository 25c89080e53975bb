//! Sparse exact multivariate polynomials over a pluggable coefficient ring,
//! in expanded (term map) and factored (product of affine forms) shapes.

mod factored;
mod multipoly;
mod ring;

pub use factored::{product_of_affine_factors, AffineFactor, Evaluate, FactoredPoly};
pub use multipoly::{difference_product, Exponents, MultiPoly, PolyJson, TermJson};
pub use ring::{CoeffRing, CyclotomicRing, Integers};

/// Largest number of terms an expansion may produce unless configured otherwise.
pub const DEFAULT_EXPANSION_BUDGET: usize = 10_000_000;

/// Upper bound on the number of monomials a product can have, given its
/// total degree and the degree in each variable.
pub(crate) fn monomial_bound(total_degree: u64, per_var: &[u64], homogeneous: bool) -> u128 {
    let n = per_var.len() as u128;
    let by_box = per_var
        .iter()
        .fold(1u128, |acc, &d| acc.saturating_mul(d as u128 + 1));
    // Monomials of degree exactly D (homogeneous) or at most D in n variables.
    let (top, k) = if homogeneous {
        (
            (total_degree as u128 + n).saturating_sub(1),
            n.saturating_sub(1),
        )
    } else {
        (total_degree as u128 + n, n)
    };
    let mut by_degree = 1u128;
    for i in 0..k {
        match by_degree.checked_mul(top - i) {
            Some(v) => by_degree = v / (i + 1),
            None => {
                by_degree = u128::MAX;
                break;
            }
        }
    }
    by_box.min(by_degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_examples() {
        // (x1 - x2)^2: homogeneous of degree 2 in 2 variables, 3 monomials.
        assert_eq!(monomial_bound(2, &[2, 2], true), 3);
        // Vandermonde in 3 variables: degree 3, per-variable degree 2.
        assert_eq!(monomial_bound(3, &[2, 2, 2], true), 10);
        assert_eq!(monomial_bound(1, &[1], false), 2);
        assert_eq!(monomial_bound(0, &[], true), 1);
    }
}
