use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The residue ring `Z/(n)`. Elements are plain `u64` values kept in `[0, n)`;
/// the handle carries the modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModRing {
    modulus: u64,
}

impl ModRing {
    /// Panics when `modulus < 2`; use [`ModRing::try_new`] for untrusted input.
    pub fn new(modulus: u64) -> Self {
        Self::try_new(modulus).expect("modulus must be at least 2")
    }

    pub fn try_new(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidInstance(format!(
                "modulus {modulus} is smaller than 2"
            )));
        }
        Ok(Self { modulus })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.modulus as i64) as u64
    }

    pub fn reduce_big(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("residue fits in u64")
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.modulus as u128) as u64
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: u64) -> bool {
        gcd(a % self.modulus, self.modulus) == 1
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inverse(&self, a: u64) -> Result<u64> {
        let a = a % self.modulus;
        let ext = BigInt::from(a).extended_gcd(&BigInt::from(self.modulus));
        if !ext.gcd.abs().eq(&BigInt::from(1)) {
            return Err(Error::NotInvertible {
                value: a,
                modulus: self.modulus,
            });
        }
        Ok(self.reduce_big(&ext.x))
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.modulus
    }
}

pub fn mod_inverse(modulus: u64, a: u64) -> Result<u64> {
    ModRing::try_new(modulus)?.inverse(a)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The units of `Z/(n)` in increasing order.
pub fn units(modulus: u64) -> Vec<u64> {
    (1..modulus).filter(|&a| gcd(a, modulus) == 1).collect()
}
