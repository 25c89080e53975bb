//! The lower bound `|A + B| ≥ β_p(|A|, |B|)` for subsets of `Z/(p^α)`.
//!
//! `β_p(r, s)` is the least `n ≥ 1` such that `p | C(n, k)` for every `k`
//! with `n - r < k < s`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{binomial, is_prime, CycloInt};
use crate::error::{invalid, Result};
use crate::rng;

/// Reference `β_p(r, s)`: exact binomials reduced mod `p`.
pub fn beta(p: u64, r: u64, s: u64) -> u64 {
    assert!(r >= 1 && s >= 1, "set sizes must be positive");
    let p = BigUint::from(p);
    (1..)
        .find(|&n: &u64| {
            let lo = n as i64 - r as i64 + 1;
            (lo..s as i64).all(|k| (binomial(n, k) % &p).is_zero())
        })
        .expect("n = r + s - 1 always qualifies")
}

/// `p ∤ C(n, k)` iff every base-`p` digit of `k` is at most that of `n`.
fn binomial_nonzero_mod_p(p: u64, mut n: u64, mut k: u64) -> bool {
    if k > n {
        return false;
    }
    while k > 0 {
        if k % p > n % p {
            return false;
        }
        n /= p;
        k /= p;
    }
    true
}

/// `β_p(r, s)` through Lucas' theorem.
pub fn beta_lucas(p: u64, r: u64, s: u64) -> u64 {
    assert!(r >= 1 && s >= 1, "set sizes must be positive");
    (1..)
        .find(|&n: &u64| {
            let lo = (n + 1).saturating_sub(r);
            (lo..s).all(|k| !binomial_nonzero_mod_p(p, n, k))
        })
        .expect("n = r + s - 1 always qualifies")
}

/// `{a + b mod modulus}`, sorted.
pub fn sumset(a: &[u64], b: &[u64], modulus: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a
        .iter()
        .flat_map(|&x| b.iter().map(move |&y| (x + y) % modulus))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Two nonempty subsets of `Z/(p^α)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumsetInstance {
    pub p: u64,
    pub alpha: u32,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

fn group_order(p: u64, alpha: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    if alpha == 0 {
        return Err(invalid("alpha must be at least 1"));
    }
    p.checked_pow(alpha)
        .ok_or_else(|| invalid(format!("{p}^{alpha} overflows")))
}

impl SumsetInstance {
    /// Residues are reduced, sorted and deduplicated.
    pub fn new(p: u64, alpha: u32, a: &[i64], b: &[i64]) -> Result<Self> {
        let q = group_order(p, alpha)?;
        let norm = |s: &[i64]| -> Result<Vec<u64>> {
            let mut v: Vec<u64> = s.iter().map(|&x| x.rem_euclid(q as i64) as u64).collect();
            v.sort_unstable();
            v.dedup();
            if v.is_empty() {
                return Err(invalid("sets must be nonempty"));
            }
            Ok(v)
        };
        Ok(Self {
            p,
            alpha,
            a: norm(a)?,
            b: norm(b)?,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.alpha)
    }

    pub fn check(&self) -> PairCheck {
        let sum = sumset(&self.a, &self.b, self.modulus());
        let bound = beta(self.p, self.a.len() as u64, self.b.len() as u64);
        PairCheck {
            size: sum.len() as u64,
            sumset: sum,
            beta: bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub sumset: Vec<u64>,
    pub size: u64,
    pub beta: u64,
}

impl PairCheck {
    pub fn holds(&self) -> bool {
        self.size >= self.beta
    }

    pub fn tight(&self) -> bool {
        self.size == self.beta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdMode {
    Exhaustive,
    /// `count` pairs of nonempty subsets drawn uniformly.
    Sample {
        count: u64,
        seed: u64,
    },
}

/// Largest group order for which all pairs of subsets are enumerated.
pub const MAX_EXHAUSTIVE_ORDER: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdReport {
    pub p: u64,
    pub alpha: u32,
    pub pairs: u64,
    pub violations: Vec<(Vec<u64>, Vec<u64>)>,
    pub tight_count: u64,
    /// Equality cases, in enumeration order; possibly truncated to a cap.
    pub tight: Vec<(Vec<u64>, Vec<u64>)>,
}

fn mask_to_set(mask: u64, q: u64) -> Vec<u64> {
    (0..q).filter(|&i| mask >> i & 1 == 1).collect()
}

/// `A + B` on bitmasks over `Z/(q)`: OR of the rotations of `B` by each `a ∈ A`.
fn mask_sumset(a: u64, b: u64, q: u64) -> u64 {
    let full = if q == 64 { u64::MAX } else { (1u64 << q) - 1 };
    let mut acc = 0;
    let mut rest = a;
    while rest != 0 {
        let s = rest.trailing_zeros() as u64;
        rest &= rest - 1;
        acc |= if s == 0 {
            b
        } else {
            ((b << s) | (b >> (q - s))) & full
        };
    }
    acc
}

#[derive(Default)]
struct Tally {
    pairs: u64,
    violations: Vec<(u64, u64)>,
    tight_count: u64,
    tight: Vec<(u64, u64)>,
}

impl Tally {
    fn record(&mut self, a: u64, b: u64, q: u64, table: &[Vec<u64>], cap: usize) {
        let size = mask_sumset(a, b, q).count_ones() as u64;
        let bound = table[a.count_ones() as usize][b.count_ones() as usize];
        self.pairs += 1;
        if size < bound {
            self.violations.push((a, b));
        } else if size == bound {
            self.tight_count += 1;
            if self.tight.len() < cap {
                self.tight.push((a, b));
            }
        }
    }

    fn merge(mut self, other: Tally, cap: usize) -> Tally {
        self.pairs += other.pairs;
        self.violations.extend(other.violations);
        self.tight_count += other.tight_count;
        let room = cap.saturating_sub(self.tight.len());
        self.tight.extend(other.tight.into_iter().take(room));
        self
    }
}

/// Checks the bound over all (or randomly drawn) pairs of nonempty subsets of
/// `Z/(p^α)`. At most `tight_cap` equality cases are listed; all are counted.
pub fn verify_cd_bound(p: u64, alpha: u32, mode: CdMode, tight_cap: usize) -> Result<CdReport> {
    let q = group_order(p, alpha)?;
    if q > 63 {
        return Err(invalid(format!(
            "group order {q} exceeds the bitmask width"
        )));
    }
    let table: Vec<Vec<u64>> = (0..=q)
        .map(|r| {
            (0..=q)
                .map(|s| if r == 0 || s == 0 { 0 } else { beta(p, r, s) })
                .collect()
        })
        .collect();
    let top = 1u64 << q;
    let tally = match mode {
        CdMode::Exhaustive => {
            if q > MAX_EXHAUSTIVE_ORDER {
                return Err(invalid(format!(
                    "exhaustive enumeration is limited to groups of order {MAX_EXHAUSTIVE_ORDER}"
                )));
            }
            (1..top)
                .into_par_iter()
                .map(|a| {
                    let mut t = Tally::default();
                    for b in 1..top {
                        t.record(a, b, q, &table, tight_cap);
                    }
                    t
                })
                .collect::<Vec<_>>()
                .into_iter()
                .fold(Tally::default(), |acc, t| acc.merge(t, tight_cap))
        }
        CdMode::Sample { count, seed } => {
            let mut rng = rng::seeded(seed);
            let mut t = Tally::default();
            for _ in 0..count {
                let a = rng.random_range(1..top);
                let b = rng.random_range(1..top);
                t.record(a, b, q, &table, tight_cap);
            }
            t
        }
    };
    let sets = |v: Vec<(u64, u64)>| {
        v.into_iter()
            .map(|(a, b)| (mask_to_set(a, q), mask_to_set(b, q)))
            .collect()
    };
    Ok(CdReport {
        p,
        alpha,
        pairs: tally.pairs,
        violations: sets(tally.violations),
        tight_count: tally.tight_count,
        tight: sets(tally.tight),
    })
}

/// The coefficient of `x^k y^{n-k}` in `Π_{c ∈ C} (x - z^c y)`, `z` a
/// primitive `p^α`-th root of unity, for one `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricCoefficient {
    pub k: usize,
    pub coefficient: CycloInt,
    pub is_zero: bool,
    pub value_at_one: BigInt,
}

/// All coefficients of `Π_{c ∈ C} (x - z^c y)` for exponents `C ⊂ Z/(p^α)`.
pub fn symmetric_coefficients(p: u64, alpha: u32, c: &[u64]) -> Result<Vec<SymmetricCoefficient>> {
    let q = group_order(p, alpha)? as usize;
    // coeffs[j] multiplies x^{len - j} y^j.
    let mut coeffs = vec![CycloInt::one(q)];
    for &e in c {
        let root = CycloInt::monomial(q, e as i64);
        let mut next = coeffs.clone();
        next.push(CycloInt::zero(q));
        for (j, prev) in coeffs.iter().enumerate() {
            next[j + 1] = &next[j + 1] - &(prev * &root);
        }
        coeffs = next;
    }
    let n = c.len();
    Ok((0..=n)
        .map(|k| {
            let coefficient = coeffs[n - k].clone();
            SymmetricCoefficient {
                k,
                is_zero: coefficient.is_zero(),
                value_at_one: coefficient.eval_at_one(),
                coefficient,
            }
        })
        .collect())
}

/// `d(z) = 0 ⇒ p | d(1)` and `d(1) = (-1)^{n-k} C(n, k)` for every `k`.
pub fn symmetric_divisibility_holds(p: u64, alpha: u32, c: &[u64]) -> Result<bool> {
    let n = c.len() as u64;
    let pb = BigInt::from(p);
    Ok(symmetric_coefficients(p, alpha, c)?.iter().all(|s| {
        let sign = if (n - s.k as u64).is_multiple_of(2) {
            1
        } else {
            -1
        };
        let expected = BigInt::from(binomial(n, s.k as i64)) * sign;
        s.value_at_one == expected && (!s.is_zero || s.value_at_one.mod_floor(&pb).is_zero())
    }))
}
