use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::ModRing;

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `n!!`, the product of every other integer down from `n`; `0!! = (-1)!! = 1`.
pub fn double_factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// Binomial coefficient, zero when `k > n` or `k < 0`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(Σ parts)! / Π parts_i!`, computed as a product of binomials.
pub fn multinomial(parts: &[u64]) -> BigUint {
    let mut total = 0u64;
    let mut acc = BigUint::one();
    for &p in parts {
        total += p;
        acc *= binomial(total, p as i64);
    }
    acc
}

/// `(md)! / (d!)^m` reduced mod `modulus`. The quotient is computed over the
/// integers before reducing, so composite moduli are handled exactly.
pub fn factorial_quotient_mod(m: u64, d: u64, modulus: u64) -> u64 {
    let exact = factorial(m * d) / factorial(d).pow(m as u32);
    debug_assert_eq!(exact, multinomial(&vec![d; m as usize]));
    let ring = ModRing::new(modulus);
    ring.reduce_big(&BigInt::from(exact))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_quotient_examples() {
        assert_eq!(factorial_quotient_mod(2, 1, 5), 2);
        assert_eq!(factorial_quotient_mod(2, 2, 7), 6);
        assert_eq!(factorial_quotient_mod(3, 1, 3), 0);
    }

    #[test]
    fn binomials_match_pascal() {
        let mut row = vec![BigUint::one()];
        for n in 1..30u64 {
            let mut next = vec![BigUint::one(); n as usize + 1];
            for k in 1..n as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            for k in 0..=n {
                assert_eq!(binomial(n, k as i64), row[k as usize]);
            }
            assert!(binomial(n, -1).is_zero());
            assert!(binomial(n, n as i64 + 1).is_zero());
        }
    }

    #[test]
    fn multinomial_and_double_factorial() {
        assert_eq!(multinomial(&[3, 2, 1]), BigUint::from(60u32));
        assert_eq!(multinomial(&[]), BigUint::one());
        assert_eq!(double_factorial(5), BigUint::from(15u32));
        assert_eq!(double_factorial(0), BigUint::one());
        assert_eq!(double_factorial(6), BigUint::from(48u32));
    }
}
