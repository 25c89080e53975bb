//! The Dyson constant-term identity: the free term of
//! `Π_{i≠j} (1 - x_i/x_j)^{a_i}` is the multinomial `a!/(a_1!…a_n!)`.
//!
//! Three independent routes are provided: the closed formula, brute-force
//! expansion of the equivalent homogeneous polynomial, and the evaluation at
//! the unique nonzero grid point that drives the interpolation proof.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::algebra::{factorial, multinomial};
use crate::error::{Error, Result};
use crate::poly::{product_of_affine_factors, AffineFactor, Integers, DEFAULT_EXPANSION_BUDGET};

/// Largest total degree `(n - 1) Σ a_i` accepted by [`dyson_bruteforce`].
pub const MAX_BRUTEFORCE_DEGREE: u64 = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DysonInstance {
    a: Vec<u64>,
}

impl DysonInstance {
    pub fn new(a: Vec<u64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidInstance("need at least one exponent".into()));
        }
        if a.contains(&0) {
            return Err(Error::InvalidInstance("exponents must be positive".into()));
        }
        Ok(Self { a })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.a
    }

    pub fn total(&self) -> u64 {
        self.a.iter().sum()
    }

    /// `β_i = a_1 + … + a_{i-1}`, the left ends of consecutive segments.
    pub fn offsets(&self) -> Vec<u64> {
        self.a
            .iter()
            .scan(0, |acc, &x| {
                let start = *acc;
                *acc += x;
                Some(start)
            })
            .collect()
    }

    /// Total degree of the homogeneous form, `Σ_{i<j} (a_i + a_j)`.
    pub fn expanded_degree(&self) -> u64 {
        (self.a.len() as u64 - 1) * self.total()
    }
}

/// `a! / (a_1! … a_n!)`.
pub fn dyson_formula(inst: &DysonInstance) -> BigInt {
    BigInt::from(multinomial(inst.exponents()))
}

/// Expands `Π_{i<j} (-1)^{a_j} (x_j - x_i)^{a_i + a_j}` and reads off the
/// coefficient of `Π x_i^{a - a_i}`.
pub fn dyson_bruteforce(inst: &DysonInstance) -> Result<BigInt> {
    let degree = inst.expanded_degree();
    if degree > MAX_BRUTEFORCE_DEGREE {
        return Err(Error::BudgetExceeded {
            predicted: degree as u128,
            budget: MAX_BRUTEFORCE_DEGREE as usize,
        });
    }
    let a = inst.exponents();
    let n = a.len();
    let z = Integers;
    let mut factors = Vec::new();
    let mut sign_exponent = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            sign_exponent += a[j];
            for _ in 0..a[i] + a[j] {
                factors.push(AffineFactor::difference(&z, j, i, BigInt::from(0)));
            }
        }
    }
    let f = product_of_affine_factors(z, n, factors, DEFAULT_EXPANSION_BUDGET)?;
    let target: Vec<u32> = a.iter().map(|&ai| (inst.total() - ai) as u32).collect();
    let c = f.coefficient(&target)?;
    Ok(if sign_exponent % 2 == 1 { -c } else { c })
}

fn signed(v: BigUint, negative: bool) -> BigInt {
    let v = BigInt::from(v);
    if negative {
        -v
    } else {
        v
    }
}

/// `φ_i'(β_i) = (-1)^{a_{i+1}+…+a_n} (a_1+…+a_{i-1})! (a_{i+1}+…+a_n)!`
/// for `φ_i(x) = Π_{s=0}^{a-a_i} (x - s)`.
pub fn grid_derivative_at_offset(inst: &DysonInstance, i: usize) -> BigInt {
    let a = inst.exponents();
    let before: u64 = a[..i].iter().sum();
    let after: u64 = a[i + 1..].iter().sum();
    signed(factorial(before) * factorial(after), after % 2 == 1)
}

/// `C_{i,j}(β) = Π_{s=-a_i+1}^{a_j} (β_j - β_i + s) = (a_i+…+a_j)! / (a_{i+1}+…+a_{j-1})!`.
pub fn segment_factor_at_offsets(inst: &DysonInstance, i: usize, j: usize) -> BigInt {
    let a = inst.exponents();
    let outer: u64 = a[i..=j].iter().sum();
    let inner: u64 = a[i + 1..j].iter().sum();
    BigInt::from(factorial(outer) / factorial(inner))
}

/// The constant term as `Π_{i<j} (-1)^{a_j} C_{i,j}(β) / Π_i φ_i'(β_i)`,
/// using only the closed forms at the point `x_i = β_i`.
pub fn dyson_via_evaluation(inst: &DysonInstance) -> BigInt {
    let a = inst.exponents();
    let n = a.len();
    let mut numerator = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            numerator *= segment_factor_at_offsets(inst, i, j);
            if a[j] % 2 == 1 {
                numerator = -numerator;
            }
        }
    }
    let denominator = (0..n).fold(BigInt::one(), |acc, i| {
        acc * grid_derivative_at_offset(inst, i)
    });
    debug_assert!((&numerator % &denominator) == BigInt::from(0));
    numerator / denominator
}

/// Coefficient of `(x_1…x_m)^{(m-1)d}` in `Π_{i<j} (x_i - x_j)^{2d}`,
/// `(-1)^{d·m(m-1)/2} (md)! / (d!)^m`.
pub fn packing_coefficient(m: u64, d: u64) -> BigInt {
    let magnitude = multinomial(&vec![d; m as usize]);
    signed(magnitude, (d * (m * m.saturating_sub(1) / 2)) % 2 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nullstellensatz::{cn_coefficient, GridSpec};
    use crate::poly::{difference_product, Evaluate, FactoredPoly};

    fn inst(a: &[u64]) -> DysonInstance {
        DysonInstance::new(a.to_vec()).unwrap()
    }

    #[test]
    fn formula_examples() {
        assert_eq!(dyson_formula(&inst(&[1, 1])), BigInt::from(2));
        assert_eq!(dyson_formula(&inst(&[1])), BigInt::from(1));
        assert_eq!(dyson_formula(&inst(&[2, 1])), BigInt::from(3));
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(dyson_bruteforce(&inst(&[1, 1])).unwrap(), BigInt::from(2));
        assert_eq!(
            dyson_bruteforce(&inst(&[1, 1, 1])).unwrap(),
            BigInt::from(6)
        );
        assert_eq!(dyson_bruteforce(&inst(&[2, 2])).unwrap(), BigInt::from(6));
        assert_eq!(dyson_bruteforce(&inst(&[2, 1])).unwrap(), BigInt::from(3));
        assert_eq!(dyson_bruteforce(&inst(&[5])).unwrap(), BigInt::from(1));
        assert!(matches!(
            dyson_bruteforce(&inst(&[4, 4, 4, 4])),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(dyson_via_evaluation(&inst(&[1, 1])), BigInt::from(2));
        assert_eq!(dyson_via_evaluation(&inst(&[1])), BigInt::from(1));
        assert_eq!(dyson_via_evaluation(&inst(&[3, 2, 1])), BigInt::from(60));
        assert_eq!(
            dyson_bruteforce(&inst(&[3, 2, 1])).unwrap(),
            BigInt::from(60)
        );
    }

    #[test]
    fn invalid_instances() {
        assert!(DysonInstance::new(vec![]).is_err());
        assert!(DysonInstance::new(vec![1, 0]).is_err());
    }

    #[test]
    fn packing_examples() {
        assert_eq!(packing_coefficient(2, 1), BigInt::from(-2));
        assert_eq!(packing_coefficient(2, 2), BigInt::from(6));
        for d in 1..5 {
            assert_eq!(packing_coefficient(1, d), BigInt::from(1));
        }
    }

    #[test]
    fn packing_coefficient_matches_expansion() {
        for m in 1..=3usize {
            for d in 1..=3u32 {
                if (m as u32 - 1) * m as u32 * d > 18 {
                    continue;
                }
                let p = difference_product(Integers, m, |_, _| 2 * d, 1_000_000).unwrap();
                let target = vec![(m as u32 - 1) * d; m];
                assert_eq!(
                    p.coefficient(&target).unwrap(),
                    packing_coefficient(m as u64, d as u64),
                    "m={m} d={d}"
                );
                let same = dyson_formula(&inst(&vec![d as u64; m]));
                assert_eq!(
                    packing_coefficient(m as u64, d as u64).magnitude(),
                    same.magnitude()
                );
            }
        }
    }

    /// The closed forms agree with the literal products they summarize.
    #[test]
    fn closed_forms_match_direct_products() {
        for a in [
            vec![1],
            vec![2, 1],
            vec![1, 3, 2],
            vec![2, 2, 1, 1],
            vec![4, 1, 2],
        ] {
            let inst = inst(&a);
            let beta = inst.offsets();
            let total = inst.total() as i64;
            for i in 0..a.len() {
                let bi = beta[i] as i64;
                let direct: BigInt = (0..=total - a[i] as i64)
                    .filter(|&s| s != bi)
                    .map(|s| BigInt::from(bi - s))
                    .product();
                assert_eq!(grid_derivative_at_offset(&inst, i), direct);
                for j in i + 1..a.len() {
                    let bj = beta[j] as i64;
                    let direct: BigInt = (-(a[i] as i64) + 1..=a[j] as i64)
                        .map(|s| BigInt::from(bj - bi + s))
                        .product();
                    assert_eq!(segment_factor_at_offsets(&inst, i, j), direct);
                }
            }
        }
    }

    /// The modified polynomial has the same top coefficient and vanishes on
    /// the grid everywhere except at the offsets.
    #[test]
    fn modified_polynomial_has_single_nonzero_point() {
        for a in [vec![1, 1], vec![2, 1], vec![1, 2, 1], vec![2, 1, 2]] {
            let inst = inst(&a);
            let n = a.len();
            let total = inst.total();
            let z = Integers;
            let mut f = FactoredPoly::new(z, n);
            let mut negate = false;
            for i in 0..n {
                for j in i + 1..n {
                    negate ^= a[j] % 2 == 1;
                    for s in -(a[i] as i64) + 1..=a[j] as i64 {
                        f.push(AffineFactor::difference(&z, j, i, BigInt::from(s)))
                            .unwrap();
                    }
                }
            }
            if negate {
                f = f.scaled(BigInt::from(-1));
            }
            let grid = GridSpec::<Integers>::new(
                a.iter()
                    .map(|&ai| (0..=(total - ai) as i64).map(BigInt::from).collect())
                    .collect(),
            )
            .unwrap();
            let beta: Vec<BigInt> = inst.offsets().into_iter().map(BigInt::from).collect();
            let mut nonzero = Vec::new();
            grid.for_each_point(|_, pt| {
                if f.eval(pt).unwrap() != BigInt::from(0) {
                    nonzero.push(pt.to_vec());
                }
                true
            });
            assert_eq!(nonzero, vec![beta]);
            assert_eq!(cn_coefficient(&f, &grid).unwrap(), dyson_formula(&inst));
        }
    }
}
