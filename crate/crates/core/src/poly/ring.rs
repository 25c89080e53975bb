use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{CycloInt, ModRing};
use crate::error::{Error, Result};

/// A commutative ring with unity used as a polynomial coefficient domain.
///
/// The ring value is a handle (it may carry a modulus or an order); elements
/// only combine through the handle that produced them.
pub trait CoeffRing: Clone + PartialEq + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Some `q` with `b * q = a` when it exists and is unique.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_int(&BigInt::from(v))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// The integers, with arbitrary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn exact_div(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigInt> {
        s.trim()
            .parse()
            .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
    }
}

impl CoeffRing for ModRing {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus()
    }
    fn from_int(&self, v: &BigInt) -> u64 {
        self.reduce_big(v)
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce(v)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ModRing::add(self, *a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        ModRing::neg(self, *a)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ModRing::sub(self, *a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ModRing::mul(self, *a, *b)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    /// Division is only accepted by a unit, where the quotient is unique.
    fn exact_div(&self, a: &u64, b: &u64) -> Option<u64> {
        let inv = self.inverse(*b).ok()?;
        Some(ModRing::mul(self, *a, inv))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let v: BigInt = Integers.parse(s)?;
        Ok(self.reduce_big(&v))
    }
}

/// `Z[w]` for `w` a primitive `n`-th root of unity. Elements are kept in the
/// canonical form (remainder mod `Φ_n`) so that `==` is ring equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclotomicRing {
    order: usize,
}

impl CyclotomicRing {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1);
        Self { order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `w^e` in canonical form.
    pub fn root_power(&self, e: i64) -> CycloInt {
        CycloInt::monomial(self.order, e).canonical()
    }
}

impl CoeffRing for CyclotomicRing {
    type Elem = CycloInt;

    fn zero(&self) -> CycloInt {
        CycloInt::zero(self.order)
    }
    fn one(&self) -> CycloInt {
        CycloInt::one(self.order).canonical()
    }
    fn from_int(&self, v: &BigInt) -> CycloInt {
        CycloInt::from_coeffs(self.order, [v.clone()]).canonical()
    }
    fn add(&self, a: &CycloInt, b: &CycloInt) -> CycloInt {
        (a + b).canonical()
    }
    fn neg(&self, a: &CycloInt) -> CycloInt {
        -a
    }
    fn mul(&self, a: &CycloInt, b: &CycloInt) -> CycloInt {
        (a * b).canonical()
    }
    fn is_zero(&self, a: &CycloInt) -> bool {
        a.is_zero()
    }
    fn exact_div(&self, a: &CycloInt, b: &CycloInt) -> Option<CycloInt> {
        // Only division by ±1 is supported; general division in Z[w] is not needed.
        let one = self.one();
        if *b == one {
            Some(a.clone())
        } else if *b == self.neg(&one) {
            Some(-a)
        } else {
            None
        }
    }
    fn format(&self, a: &CycloInt) -> String {
        a.coeffs()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
    fn parse(&self, s: &str) -> Result<CycloInt> {
        // Comma separated coefficient list of powers of w.
        let coeffs = s
            .split(',')
            .map(|c| Integers.parse(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycloInt::from_coeffs(self.order, coeffs).canonical())
    }
}
