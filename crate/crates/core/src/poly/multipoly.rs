use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{monomial_bound, CoeffRing};
use crate::algebra::binomial;
use crate::error::{Error, Result};

/// Exponent vector of a monomial, one entry per variable.
pub type Exponents = Vec<u32>;

/// A sparse polynomial in `arity` variables. Zero coefficients are never
/// stored and terms iterate in lexicographic order of their exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly<R: CoeffRing> {
    ring: R,
    arity: usize,
    terms: BTreeMap<Exponents, R::Elem>,
}

impl<R: CoeffRing> MultiPoly<R> {
    pub fn zero(ring: R, arity: usize) -> Self {
        Self {
            ring,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: R, arity: usize, c: R::Elem) -> Self {
        let mut p = Self::zero(ring, arity);
        p.add_term(vec![0; arity], c);
        p
    }

    pub fn one(ring: R, arity: usize) -> Self {
        let one = ring.one();
        Self::constant(ring, arity, one)
    }

    /// The variable `x_index` (zero-based).
    pub fn var(ring: R, arity: usize, index: usize) -> Result<Self> {
        let mut e = vec![0; arity];
        *e.get_mut(index).ok_or(Error::ArityMismatch {
            expected: arity,
            found: index + 1,
        })? = 1;
        let one = ring.one();
        Self::from_terms(ring, arity, [(e, one)])
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms(
        ring: R,
        arity: usize,
        terms: impl IntoIterator<Item = (Exponents, R::Elem)>,
    ) -> Result<Self> {
        let mut p = Self::zero(ring, arity);
        for (e, c) in terms {
            p.check_arity(e.len())?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: R::Elem) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                if !self.ring.is_zero(&c) {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                let sum = self.ring.add(slot.get(), &c);
                if self.ring.is_zero(&sum) {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    fn check_arity(&self, found: usize) -> Result<()> {
        if found != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found,
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.check_arity(other.arity)?;
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &R::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), self.ring.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &R::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.arity);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), self.ring.mul(c, k));
        }
        out
    }

    /// Exact product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut acc: HashMap<Exponents, R::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = self.ring.mul(ca, cb);
                match acc.get_mut(&e) {
                    Some(slot) => *slot = self.ring.add(slot, &c),
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        Ok(Self {
            ring: self.ring.clone(),
            arity: self.arity,
            terms: acc
                .into_iter()
                .filter(|(_, c)| !self.ring.is_zero(c))
                .collect(),
        })
    }

    /// Coefficient of the monomial with exponents `e` (ring zero if absent).
    pub fn coefficient(&self, e: &[u32]) -> Result<R::Elem> {
        self.check_arity(e.len())?;
        Ok(self
            .terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| self.ring.zero()))
    }

    pub fn eval(&self, point: &[R::Elem]) -> Result<R::Elem> {
        self.check_arity(point.len())?;
        let ring = &self.ring;
        let mut total = ring.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term = ring.mul(&term, x);
                }
            }
            total = ring.add(&total, &term);
        }
        Ok(total)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    e: e.clone(),
                    c: self.ring.format(c),
                })
                .collect(),
        }
    }

    pub fn from_json(ring: R, json: &PolyJson) -> Result<Self> {
        let terms = json
            .terms
            .iter()
            .map(|t| Ok((t.e.clone(), ring.parse(&t.c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(ring, json.arity, terms)
    }
}

/// Wire form of a [`MultiPoly`]: `{"arity": n, "terms": [{"e": [..], "c": "<decimal>"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub arity: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: String,
}

/// `(x_i - x_j)^k` by the binomial theorem.
fn difference_power<R: CoeffRing>(
    ring: &R,
    arity: usize,
    i: usize,
    j: usize,
    k: u32,
) -> MultiPoly<R> {
    let mut p = MultiPoly::zero(ring.clone(), arity);
    for t in 0..=k {
        let mut e = vec![0; arity];
        e[i] = k - t;
        e[j] = t;
        let mut c = BigInt::from(binomial(k as u64, t as i64));
        if t % 2 == 1 {
            c = -c;
        }
        p.add_term(e, ring.from_int(&c));
    }
    p
}

/// Expands `Π_{i<j} (x_i - x_j)^{e(i, j)}` in `arity` variables.
///
/// Fails with `BudgetExceeded` when the predicted or the actual number of
/// terms goes over `budget`.
pub fn difference_product<R: CoeffRing>(
    ring: R,
    arity: usize,
    exponent: impl Fn(usize, usize) -> u32,
    budget: usize,
) -> Result<MultiPoly<R>> {
    let mut pairs = Vec::new();
    let mut per_var = vec![0u64; arity];
    let mut total = 0u64;
    for i in 0..arity {
        for j in i + 1..arity {
            let k = exponent(i, j);
            if k > 0 {
                pairs.push((i, j, k));
                per_var[i] += k as u64;
                per_var[j] += k as u64;
                total += k as u64;
            }
        }
    }
    let predicted = monomial_bound(total, &per_var, true);
    if predicted > budget as u128 {
        return Err(Error::BudgetExceeded { predicted, budget });
    }
    let mut acc = MultiPoly::one(ring.clone(), arity);
    for (i, j, k) in pairs {
        acc = acc.mul(&difference_power(&ring, arity, i, j, k))?;
        if acc.num_terms() > budget {
            return Err(Error::BudgetExceeded {
                predicted: acc.num_terms() as u128,
                budget,
            });
        }
    }
    Ok(acc)
}
