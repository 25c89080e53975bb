use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial with integer coefficients, lowest degree first.
/// Trailing zeros are always trimmed, so the zero polynomial is `[]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += 1;
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder by a monic divisor; exact over the integers.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        assert!(divisor.coeffs[dd].is_one(), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::default(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let lead = std::mem::take(&mut rem[top]);
            if lead.is_zero() {
                continue;
            }
            let shift = top - dd;
            for (i, c) in divisor.coeffs[..dd].iter().enumerate() {
                if !c.is_zero() {
                    rem[shift + i] -= &lead * c;
                }
            }
            quot[shift] = lead;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{e}")?,
            }
        }
        Ok(())
    }
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<UniPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<UniPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub(crate) fn cyclotomic_shared(n: usize) -> Arc<UniPoly> {
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    if let Some(hit) = cache().lock().unwrap().get(&n) {
        return Arc::clone(hit);
    }
    let mut acc = UniPoly::x_pow_minus_one(n);
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let (q, r) = acc.div_rem_monic(&cyclotomic_shared(d));
        debug_assert!(r.is_zero());
        acc = q;
    }
    let acc = Arc::new(acc);
    cache().lock().unwrap().insert(n, Arc::clone(&acc));
    acc
}

/// The `n`-th cyclotomic polynomial, `(x^n - 1) / Π_{d | n, d < n} Φ_d`.
pub fn cyclotomic_poly(n: usize) -> UniPoly {
    (*cyclotomic_shared(n)).clone()
}

/// An element `Σ c_j w^j` of `Z[w]`, `w = exp(2πi/n)`, stored as a coefficient
/// vector of length exactly `n` (i.e. modulo `x^n - 1`).
///
/// The representation is not canonical: distinct vectors may denote the same
/// cyclotomic integer. Compare with [`CycloInt::equals`] or test
/// [`CycloInt::is_zero`], which divide by `Φ_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloInt {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl CycloInt {
    /// Folds any coefficient list into length `n` by reducing exponents mod `n`.
    pub fn from_coeffs(n: usize, coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        assert!(n >= 1, "order must be positive");
        let mut out = vec![BigInt::zero(); n];
        for (e, c) in coeffs.into_iter().enumerate() {
            out[e % n] += c;
        }
        Self { n, coeffs: out }
    }

    pub fn from_i64s(n: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(n, coeffs.iter().map(|&c| BigInt::from(c)))
    }

    pub fn zero(n: usize) -> Self {
        Self::from_coeffs(n, [])
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0)
    }

    /// `w^e`, with `e` taken mod `n`.
    pub fn monomial(n: usize, e: i64) -> Self {
        let mut out = Self::zero(n);
        out.coeffs[e.rem_euclid(n as i64) as usize] = BigInt::one();
        out
    }

    /// `Σ_{e=from}^{to} (w^step)^e`, empty when `from > to`.
    pub fn geometric_sum(n: usize, step: i64, from: i64, to: i64) -> Self {
        let mut out = Self::zero(n);
        for e in from..=to {
            out.coeffs[(step * e).rem_euclid(n as i64) as usize] += 1;
        }
        out
    }

    pub fn from_poly(n: usize, poly: &UniPoly) -> Self {
        Self::from_coeffs(n, poly.coeffs().iter().cloned())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> UniPoly {
        UniPoly::new(self.coeffs.clone())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::OrderMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Cyclic convolution of the coefficient vectors.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[(i + j) % n] += a * b;
                }
            }
        }
        Ok(Self { n, coeffs: out })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Remainder of the representing polynomial modulo `Φ_n`: the canonical
    /// form, of degree below `φ(n)`, padded back to length `n`.
    pub fn canonical(&self) -> Self {
        let (_, rem) = self.to_poly().div_rem_monic(&cyclotomic_shared(self.n));
        Self::from_poly(self.n, &rem)
    }

    /// Zero in `Z[w]` iff `Φ_n` divides the representing polynomial.
    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(Zero::is_zero) {
            return true;
        }
        let (_, rem) = self.to_poly().div_rem_monic(&cyclotomic_shared(self.n));
        rem.is_zero()
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.checked_sub(other)?.is_zero())
    }

    /// Σ coefficients, i.e. the representing polynomial evaluated at 1.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl fmt::Display for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = self.to_poly();
        write!(f, "{}", poly.to_string().replace('x', "w"))
    }
}

// Operator forms panic on mismatched orders; the `checked_*` methods report it.
impl Add for &CycloInt {
    type Output = CycloInt;
    fn add(self, rhs: &CycloInt) -> CycloInt {
        self.checked_add(rhs).expect("cyclotomic order mismatch")
    }
}

impl Sub for &CycloInt {
    type Output = CycloInt;
    fn sub(self, rhs: &CycloInt) -> CycloInt {
        self.checked_sub(rhs).expect("cyclotomic order mismatch")
    }
}

impl Mul for &CycloInt {
    type Output = CycloInt;
    fn mul(self, rhs: &CycloInt) -> CycloInt {
        self.checked_mul(rhs).expect("cyclotomic order mismatch")
    }
}

impl Neg for &CycloInt {
    type Output = CycloInt;
    fn neg(self) -> CycloInt {
        CycloInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), UniPoly::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), UniPoly::from_i64s(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(5), UniPoly::from_i64s(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_poly(6), UniPoly::from_i64s(&[1, -1, 1]));
        // Φ_105 is the first with a coefficient outside {-1, 0, 1}.
        assert!(cyclotomic_poly(105)
            .coeffs()
            .iter()
            .any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_one() {
        for n in 1..=60 {
            let prod = divisors(n)
                .into_iter()
                .fold(UniPoly::from_i64s(&[1]), |acc, d| {
                    acc.mul(&cyclotomic_poly(d))
                });
            assert_eq!(prod, UniPoly::x_pow_minus_one(n), "n = {n}");
        }
    }

    #[test]
    fn prime_power_cyclotomic_is_lacunary_sum() {
        // Φ_{p^a}(z) = Σ_{i<p} z^{i p^{a-1}}.
        for (p, a) in [(2usize, 3u32), (3, 2), (5, 2), (7, 1)] {
            let q = p.pow(a - 1);
            let mut coeffs = vec![0i64; (p - 1) * q + 1];
            for i in 0..p {
                coeffs[i * q] = 1;
            }
            assert_eq!(cyclotomic_poly(p.pow(a)), UniPoly::from_i64s(&coeffs));
        }
    }

    #[test]
    fn multiplication_examples() {
        let a = CycloInt::monomial(4, 1);
        let b = CycloInt::monomial(4, 3);
        assert_eq!(&a * &b, CycloInt::one(4));
        let s = CycloInt::from_i64s(3, &[1, 1]);
        assert_eq!(&s * &s, CycloInt::from_i64s(3, &[1, 2, 1]));
        let w = CycloInt::monomial(2, 1);
        assert_eq!(&w * &w, CycloInt::one(2));
        assert_eq!(
            CycloInt::one(3).checked_mul(&CycloInt::one(4)),
            Err(Error::OrderMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn zero_tests() {
        assert!(CycloInt::from_i64s(5, &[1, 1, 1, 1, 1]).is_zero());
        assert!(CycloInt::zero(5).is_zero());
        assert!(!CycloInt::one(5).is_zero());
        // 1 + w^3 = 0 for w a primitive 6th root.
        assert!(CycloInt::from_i64s(6, &[1, 0, 0, 1]).is_zero());
        // Φ_1 = x - 1 kills everything with coefficient sum zero.
        assert!(CycloInt::from_i64s(1, &[0]).is_zero());
    }

    #[test]
    fn evaluation_at_one() {
        assert_eq!(
            CycloInt::from_i64s(5, &[1, 1, 1, 1, 1]).eval_at_one(),
            BigInt::from(5)
        );
        assert_eq!(CycloInt::zero(3).eval_at_one(), BigInt::zero());
        assert_eq!(
            CycloInt::from_i64s(4, &[2, 3]).eval_at_one(),
            BigInt::from(5)
        );
    }

    #[test]
    fn canonical_form_is_equivalent() {
        let a = CycloInt::from_i64s(5, &[3, -1, 4, 1, 5]);
        let c = a.canonical();
        assert!(a.equals(&c).unwrap());
        assert!(c.coeffs()[4].is_zero());
    }

    fn cyclo(n: usize) -> impl Strategy<Value = CycloInt> {
        proptest::collection::vec(-20i64..20, n).prop_map(move |c| CycloInt::from_i64s(n, &c))
    }

    fn triple() -> impl Strategy<Value = (CycloInt, CycloInt, CycloInt)> {
        (1usize..13).prop_flat_map(|n| (cyclo(n), cyclo(n), cyclo(n)))
    }

    proptest! {
        #[test]
        fn ring_laws((a, b, c) in triple()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn multiples_of_phi_p_vanish(
            p in prop::sample::select(vec![2usize, 3, 5, 7, 11, 13]),
            h in proptest::collection::vec(-50i64..50, 0..12),
        ) {
            let f = UniPoly::from_i64s(&h).mul(&cyclotomic_poly(p));
            let z = CycloInt::from_poly(p, &f);
            prop_assert!(z.is_zero());
            prop_assert_eq!(f.eval_at_one() % BigInt::from(p as u64), BigInt::zero());
        }
    }
}
